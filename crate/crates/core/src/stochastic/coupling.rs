use crate::error::{Error, Result};
use crate::geometry::{Frame, Geometry};
use crate::linalg::{gram_schmidt, Matrix, Vector};

use super::{develop_step, DrivingNoise, HorizontalPath};

/// Two paths coupled by parallel displacement, with ρ_k = ρ(X_k, Y_k).
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledPaths {
    pub x: HorizontalPath,
    pub y: HorizontalPath,
    pub distances: Vec<f64>,
}

/// Drives X from the canonical frame at x₀ and Y from the frame of X
/// transported along the minimal geodesic X → Y, re-transported every step.
///
/// Y takes a Milstein-type step (Heun-averaged frame plus the Itô drift
/// correction −½Σ D_iV_i dt), so ρ follows its deterministic part with O(dt)
/// error instead of the O(√dt) fluctuation of plain geodesic stepping.
pub fn parallel_coupling<G: Geometry + ?Sized>(
    model: &G,
    noise: &DrivingNoise,
    x0: &Vector,
    y0: &Vector,
) -> Result<CoupledPaths> {
    let ux0 = Frame::canonical(model, x0.clone())?;
    let dt = noise.dt();
    let n = noise.steps;
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    let mut fx = Vec::with_capacity(n + 1);
    let mut fy = Vec::with_capacity(n + 1);
    let mut dist = Vec::with_capacity(n + 1);
    let abort = |step: usize, e: Error| Error::CouplingAbort { step, reason: e.to_string() };

    let mut x = x0.clone();
    let mut y = y0.clone();
    let mut ux = ux0.e;
    for k in 0..=n {
        let uy = transport_frame(model, &x, &y, &ux).map_err(|e| abort(k, e))?;
        dist.push(model.distance(&x, &y).map_err(|e| abort(k, e))?);
        xs.push(x.clone());
        ys.push(y.clone());
        fx.push(ux.clone());
        fy.push(uy.clone());
        if k == n {
            break;
        }
        let dw = noise.increment(k);
        let (xn, uxn) = develop_step(model, &x, &ux, &dw, dt).map_err(|e| abort(k + 1, e))?;
        // Frame displaced to y after the pair moves by `w`, carried back to y.
        let carried = |w: &Vector| -> Result<Matrix> {
            let (xp, uxp) = develop_step(model, &x, &ux, w, dt)?;
            let (yp, _) = develop_step(model, &y, &uy, w, dt)?;
            let uyp = transport_frame(model, &xp, &yp, &uxp)?;
            transport_frame(model, &yp, &y, &uyp)
        };
        let g = model.metric(&y).map_err(|e| abort(k + 1, e))?;
        let back = carried(&dw).map_err(|e| abort(k + 1, e))?;
        let avg = gram_schmidt(&g, &((&uy + back) * 0.5));
        // Heun alone solves the Stratonovich equation; subtracting ½Σ D_iV_i dt
        // keeps Y a Brownian motion.
        let h = dt.sqrt();
        let mut corr = Vector::zeros(y.len());
        for i in 0..dw.len() {
            let mut w = Vector::zeros(dw.len());
            w[i] = h;
            let b = carried(&w).map_err(|e| abort(k + 1, e))?;
            corr -= (b.column(i) - uy.column(i)) * (0.5 * h);
        }
        let cols: Vec<Vector> = (0..avg.ncols()).map(|j| avg.column(j).into_owned()).collect();
        let (yc, moved) = model.exp_transport(&y, &corr, &cols).map_err(|e| abort(k + 1, e))?;
        let uc = gram_schmidt(&model.metric(&yc).map_err(|e| abort(k + 1, e))?, &Matrix::from_columns(&moved));
        let (yn, _) = develop_step(model, &yc, &uc, &dw, dt).map_err(|e| abort(k + 1, e))?;
        x = xn;
        y = yn;
        ux = uxn;
    }
    let mk = |points, frames| HorizontalPath {
        dt,
        points,
        frames,
        noise: noise.clone(),
        exploded_at: None,
        substeps: 0,
    };
    Ok(CoupledPaths { x: mk(xs, fx), y: mk(ys, fy), distances: dist })
}

/// P_{x→y} applied to the columns of `ux`, re-orthonormalized at y.
pub fn transport_frame<G: Geometry + ?Sized>(model: &G, x: &Vector, y: &Vector, ux: &Matrix) -> Result<Matrix> {
    if x == y {
        return Ok(ux.clone());
    }
    let v = model.log(x, y)?;
    let cols: Vec<Vector> = (0..ux.ncols()).map(|j| ux.column(j).into_owned()).collect();
    let (_, ws) = model.exp_transport(x, &v, &cols)?;
    let mut m = Matrix::from_columns(&ws);
    for j in 0..m.ncols() {
        let c = model.project_tangent(y, &m.column(j).into_owned());
        m.set_column(j, &c);
    }
    Ok(gram_schmidt(&model.metric(y)?, &m))
}

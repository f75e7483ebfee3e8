use crate::error::{Error, Result};
use crate::geometry::{Frame, Geometry};
use crate::linalg::{Matrix, Vector};

use super::{develop_path, CameronMartinPath, DrivingNoise, HorizontalPath};

/// β(t) = u_t⁻¹ D_h γ_t and the so(d)-valued ρ(t) along one path.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeFlow {
    pub beta: Vec<Vector>,
    pub rho: Vec<Matrix>,
}

impl DerivativeFlow {
    /// D_h γ_t in the model's coordinates at grid index k.
    pub fn tangent(&self, path: &HorizontalPath, k: usize) -> Vector {
        &path.frames[k] * &self.beta[k]
    }
}

/// Integrates dβ = ḣ dt + ½(∇Z)^#β dt + ρ∘dw, dρ = Ω(∘dw + ½Z^# dt, β) along
/// the path developed from `noise`.
///
/// Flat charts use the tangent-linear Heun scheme of the development step, so
/// β is the exact derivative of the discrete Itô map. Driftless
/// constant-curvature models use Ω(a,b) = κ(abᵀ − baᵀ). Other models are
/// unsupported.
pub fn derivative_flow<G: Geometry + ?Sized>(
    model: &G,
    noise: &DrivingNoise,
    u0: &Frame,
    h: &CameronMartinPath,
) -> Result<(HorizontalPath, DerivativeFlow)> {
    if h.steps() != noise.steps || h.dim() != noise.dim {
        return Err(Error::Contract("Cameron–Martin path does not match the noise grid".into()));
    }
    let path = develop_path(model, noise, u0)?;
    path.require_complete()?;
    let d = model.dim();
    let dt = noise.dt();
    let kappa = model
        .constant_curvature()
        .ok_or_else(|| Error::Unsupported(format!("{}: curvature tensor not available", model.id())))?;
    let flat_chart = kappa == 0.0 && model.ambient_dim() == d;

    let mut beta = vec![Vector::zeros(d)];
    let mut rho = vec![Matrix::zeros(d, d)];
    if flat_chart {
        let e = &u0.e;
        let mut x = u0.base.clone();
        let mut xi = Vector::zeros(d);
        for k in 0..noise.steps {
            let dw = noise.increment(k);
            let dh = e * &h.hdot[k] * dt;
            let z0 = model.drift(&x)?;
            let j0 = model.drift_covariant(&x)?;
            let xp = &x + e * &dw + &z0 * (0.5 * dt);
            let xip = &xi + &dh + &j0 * &xi * (0.5 * dt);
            let z1 = model.drift(&xp)?;
            let j1 = model.drift_covariant(&xp)?;
            x = &x + e * &dw + (z0 + z1) * (0.25 * dt);
            xi = &xi + &dh + (&j0 * &xi + &j1 * &xip) * (0.25 * dt);
            if !crate::linalg::all_finite(xi.as_slice()) {
                return Err(Error::NonFinite { step: k + 1 });
            }
            beta.push(e.transpose() * &xi);
            rho.push(Matrix::zeros(d, d));
        }
    } else {
        let x0 = &u0.base;
        if model.drift(x0)?.norm() != 0.0 {
            return Err(Error::Unsupported(format!(
                "{}: derivative flow with drift on a curved model",
                model.id()
            )));
        }
        let omega = |a: &Vector, b: &Vector| -> Matrix { (a * b.transpose() - b * a.transpose()) * kappa };
        let mut b = Vector::zeros(d);
        let mut r = Matrix::zeros(d, d);
        for k in 0..noise.steps {
            let dw = noise.increment(k);
            let dh = &h.hdot[k] * dt;
            let bp = &b + &dh + &r * &dw;
            let rp = &r + omega(&dw, &b);
            let bsum = &b + &bp;
            b = &b + &dh + (&r + &rp) * &dw * 0.5;
            r = &r + omega(&dw, &bsum) * 0.5;
            beta.push(b.clone());
            rho.push(r.clone());
        }
    }
    Ok((path, DerivativeFlow { beta, rho }))
}

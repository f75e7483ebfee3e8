use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::{Frame, Geometry};
use crate::linalg::{all_finite, gram_schmidt, Matrix, Vector};

use super::DrivingNoise;

/// Step-halving rule for stiff drifts: a step of length h is split in two
/// (Brownian bridge) while |½Z(x)|·h > ratio·|x| + offset; below `floor` the
/// path is declared exploded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveStepping {
    pub ratio: f64,
    pub offset: f64,
    pub floor: f64,
}

impl Default for AdaptiveStepping {
    fn default() -> Self {
        AdaptiveStepping { ratio: 0.1, offset: 1.0, floor: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevelopOptions {
    /// Chart norm beyond which the path counts as exploded.
    pub explosion_threshold: f64,
    pub adaptive: Option<AdaptiveStepping>,
}

impl Default for DevelopOptions {
    fn default() -> Self {
        DevelopOptions { explosion_threshold: 1e6, adaptive: None }
    }
}

/// Grid path of orthonormal frames u_k over γ_k, with the noise that drove it.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalPath {
    pub dt: f64,
    pub points: Vec<Vector>,
    pub frames: Vec<Matrix>,
    pub noise: DrivingNoise,
    /// Grid index at which the state became non-finite or left the threshold;
    /// points and frames stop just before it.
    pub exploded_at: Option<usize>,
    /// Number of extra sub-steps taken by adaptive stepping.
    pub substeps: usize,
}

impl HorizontalPath {
    pub fn steps(&self) -> usize {
        self.noise.steps
    }

    pub fn horizon(&self) -> f64 {
        self.noise.horizon
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn is_exploded(&self) -> bool {
        self.exploded_at.is_some()
    }

    pub fn frame(&self, k: usize) -> Frame {
        Frame { base: self.points[k].clone(), e: self.frames[k].clone() }
    }

    pub fn endpoint(&self) -> &Vector {
        self.points.last().expect("paths hold at least the start point")
    }

    /// Error unless the path reached T.
    pub fn require_complete(&self) -> Result<()> {
        match self.exploded_at {
            Some(step) => Err(Error::ExplodedPath { step }),
            None => Ok(()),
        }
    }

    /// Largest eᵀge − Id deviation along the path.
    pub fn max_orthonormality_error<G: Geometry + ?Sized>(&self, model: &G) -> Result<f64> {
        let mut worst = 0.0_f64;
        for k in 0..self.points.len() {
            worst = worst.max(self.frame(k).orthonormality_error(model)?);
        }
        Ok(worst)
    }
}

fn reorthonormalize<G: Geometry + ?Sized>(model: &G, x: &Vector, e: Matrix) -> Result<Matrix> {
    let mut cols = e;
    if model.ambient_dim() != model.dim() {
        for j in 0..cols.ncols() {
            let c = model.project_tangent(x, &cols.column(j).into_owned());
            cols.set_column(j, &c);
        }
    }
    let g = model.metric(x)?;
    Ok(gram_schmidt(&g, &cols))
}

/// Heun predictor–corrector for dx = e∘dw + ½Z dt, de_j = −Γ(∘dx, e_j).
fn heun_step<G: Geometry + ?Sized>(model: &G, x: &Vector, e: &Matrix, dw: &Vector, dt: f64) -> Result<(Vector, Matrix)> {
    let field = |x: &Vector, e: &Matrix| -> Result<(Vector, Matrix)> {
        let dx = e * dw + model.drift(x)? * (0.5 * dt);
        let gam = model.christoffel(x)?;
        let mut de = Matrix::zeros(e.nrows(), e.ncols());
        for j in 0..e.ncols() {
            de.set_column(j, &(-gam.contract(&dx, &e.column(j).into_owned())));
        }
        Ok((dx, de))
    };
    let (dx1, de1) = field(x, e)?;
    let xp = x + &dx1;
    let ep = e + &de1;
    if !model.in_domain(&xp) {
        return Err(Error::domain("predictor left the chart", xp.as_slice()));
    }
    let (dx2, de2) = field(&xp, &ep)?;
    let xn = x + (dx1 + dx2) * 0.5;
    let en = e + (de1 + de2) * 0.5;
    Ok((xn, en))
}

fn exact_step<G: Geometry + ?Sized>(model: &G, x: &Vector, e: &Matrix, dw: &Vector, dt: f64) -> Result<(Vector, Matrix)> {
    let v = e * dw + model.drift(x)? * (0.5 * dt);
    let cols: Vec<Vector> = (0..e.ncols()).map(|j| e.column(j).into_owned()).collect();
    let (xn, ws) = model.exp_transport(x, &v, &cols)?;
    Ok((xn, Matrix::from_columns(&ws)))
}

/// One development step with frame re-orthonormalization: exact geodesic
/// stepping where the model supports it, Heun otherwise.
pub fn develop_step<G: Geometry + ?Sized>(
    model: &G,
    x: &Vector,
    e: &Matrix,
    dw: &Vector,
    dt: f64,
) -> Result<(Vector, Matrix)> {
    let (xn, en) = if model.exact_stepping() {
        exact_step(model, x, e, dw, dt)?
    } else {
        heun_step(model, x, e, dw, dt)?
    };
    if !all_finite(xn.as_slice()) || !all_finite(en.as_slice()) || !model.in_domain(&xn) {
        return Err(Error::eval("development step", xn.as_slice()));
    }
    let en = reorthonormalize(model, &xn, en)?;
    if !all_finite(en.as_slice()) {
        return Err(Error::eval("frame re-orthonormalization", xn.as_slice()));
    }
    Ok((xn, en))
}

struct Substepper<'a, G: ?Sized, R> {
    model: &'a G,
    rule: AdaptiveStepping,
    rng: Option<R>,
    make_rng: &'a dyn Fn() -> R,
    count: usize,
}

impl<G: Geometry + ?Sized, R: Rng> Substepper<'_, G, R> {
    /// Returns None when the step would need to go below the floor.
    fn run(&mut self, x: &Vector, e: &Matrix, dw: &Vector, h: f64) -> Result<Option<(Vector, Matrix)>> {
        let drift = self.model.drift(x)?;
        let speed = 0.5 * drift.norm();
        if speed * h > self.rule.ratio * self.model.chart_norm(x) + self.rule.offset {
            let half = 0.5 * h;
            if half < self.rule.floor {
                return Ok(None);
            }
            let rng = self.rng.get_or_insert_with(|| (self.make_rng)());
            let sd = (h / 4.0).sqrt();
            let xi = Vector::from_fn(dw.len(), |_, _| sd * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng));
            let dw1 = dw * 0.5 + xi;
            let dw2 = dw - &dw1;
            self.count += 1;
            let Some((xm, em)) = self.run(x, e, &dw1, half)? else {
                return Ok(None);
            };
            return self.run(&xm, &em, &dw2, half);
        }
        develop_step(self.model, x, e, dw, h).map(Some)
    }
}

/// Develops the noise into a horizontal path starting at `u0`.
pub fn develop_path<G: Geometry + ?Sized>(model: &G, noise: &DrivingNoise, u0: &Frame) -> Result<HorizontalPath> {
    develop_path_with(model, noise, u0, &DevelopOptions::default())
}

pub fn develop_path_with<G: Geometry + ?Sized>(
    model: &G,
    noise: &DrivingNoise,
    u0: &Frame,
    opts: &DevelopOptions,
) -> Result<HorizontalPath> {
    if noise.dim != model.dim() {
        return Err(Error::Contract(format!(
            "noise dimension {} does not match model dimension {}",
            noise.dim,
            model.dim()
        )));
    }
    if !model.in_domain(&u0.base) {
        return Err(Error::domain("start point outside the chart", u0.base.as_slice()));
    }
    let check = Frame::new(model, u0.base.clone(), u0.e.clone())?;
    let dt = noise.dt();
    let mut points = Vec::with_capacity(noise.steps + 1);
    let mut frames = Vec::with_capacity(noise.steps + 1);
    points.push(check.base);
    frames.push(check.e);
    let mut exploded_at = None;
    let mut substeps = 0;
    for k in 0..noise.steps {
        let x = &points[k];
        let e = &frames[k];
        let dw = noise.increment(k);
        let next = match opts.adaptive {
            None => develop_step(model, x, e, &dw, dt).ok(),
            Some(rule) => {
                let make = || noise.auxiliary_rng(k as u64);
                let mut sub = Substepper { model, rule, rng: None, make_rng: &make, count: 0 };
                let r = sub.run(x, e, &dw, dt).ok().flatten();
                substeps += sub.count;
                r
            }
        };
        match next {
            Some((xn, en)) if model.chart_norm(&xn) <= opts.explosion_threshold => {
                points.push(xn);
                frames.push(en);
            }
            _ => {
                exploded_at = Some(k + 1);
                break;
            }
        }
    }
    Ok(HorizontalPath { dt, points, frames, noise: noise.clone(), exploded_at, substeps })
}

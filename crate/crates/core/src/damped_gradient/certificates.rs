use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::parallel::MeanSe;
use crate::stochastic::{CameronMartinPath, EnsembleSpec};

use super::{damped_gradient_of, resolvent_shift, solve_damped_flow, CylindricalFunction};

/// Exclusion fraction above which a certificate fails.
pub const MAX_EXCLUSION: f64 = 0.01;

/// Monte-Carlo certificate estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub estimate: f64,
    pub se: f64,
    /// For two-sided certificates, the two sides being compared.
    pub lhs: f64,
    pub rhs: f64,
    pub used: usize,
    pub excluded: usize,
    pub pass: bool,
}

impl Estimate {
    pub fn exclusion_fraction(&self) -> f64 {
        self.excluded as f64 / (self.used + self.excluded).max(1) as f64
    }
}

/// Estimates E∫⟨D̃_sF, ḣ⟩ds − E[F∫⟨ḣ, dw⟩]; passes if |estimate| ≤ 3·SE.
pub fn ibp_residual<G: Geometry + ?Sized>(
    model: &G,
    f: &CylindricalFunction,
    h: &CameronMartinPath,
    spec: &EnsembleSpec,
) -> Result<Estimate> {
    if h.steps() != spec.steps || h.dim() != model.dim() {
        return Err(Error::Contract("Cameron–Martin path does not match the ensemble grid".into()));
    }
    let per_path = spec.map(|i| -> Option<(f64, f64, f64)> {
        let path = spec.develop(model, i).ok()?;
        path.require_complete().ok()?;
        let flow = solve_damped_flow(model, &path).ok()?;
        let g = damped_gradient_of(f, &path, &flow).ok()?;
        let shifted = resolvent_shift(h, &flow).ok()?.values();
        let first: f64 = g.indices.iter().zip(&g.anchors).map(|(&k, a)| a.dot(&shifted[k])).sum();
        let fv = f.eval(&path).ok()?;
        let stoch: f64 = (0..spec.steps).map(|k| h.hdot[k].dot(&path.noise.increment(k))).sum();
        let second = fv * stoch;
        Some((first - second, first, second))
    });
    let used: Vec<(f64, f64, f64)> = per_path.iter().flatten().copied().collect();
    let excluded = per_path.len() - used.len();
    if used.len() < 2 {
        return Err(Error::Contract("fewer than two usable paths".into()));
    }
    let res = MeanSe::of(&used.iter().map(|r| r.0).collect::<Vec<_>>());
    let lhs = MeanSe::of(&used.iter().map(|r| r.1).collect::<Vec<_>>()).mean;
    let rhs = MeanSe::of(&used.iter().map(|r| r.2).collect::<Vec<_>>()).mean;
    let frac = excluded as f64 / per_path.len() as f64;
    Ok(Estimate {
        estimate: res.mean,
        se: res.se,
        lhs,
        rhs,
        used: used.len(),
        excluded,
        pass: res.mean.abs() <= 3.0 * res.se && frac <= MAX_EXCLUSION,
    })
}

/// gap = 2·μ̂(∫|D̃F|²)/μ̂(F²) − Ent(F²/μ̂(F²)) with a delta-method SE; passes
/// if gap ≥ −3·SE. `lhs` is the entropy side, `rhs` the doubled energy side.
pub fn lsi_gap<G: Geometry + ?Sized>(model: &G, f: &CylindricalFunction, spec: &EnsembleSpec) -> Result<Estimate> {
    let per_path = spec.map(|i| -> Option<(f64, f64, f64)> {
        let path = spec.develop(model, i).ok()?;
        path.require_complete().ok()?;
        let flow = solve_damped_flow(model, &path).ok()?;
        let g = damped_gradient_of(f, &path, &flow).ok()?;
        let fv = f.eval(&path).ok()?;
        let f2 = fv * fv;
        if !f2.is_finite() {
            return None;
        }
        let f2log = if f2 > 0.0 { f2 * f2.max(1e-300).ln() } else { 0.0 };
        Some((f2, g.energy(), f2log))
    });
    let used: Vec<(f64, f64, f64)> = per_path.iter().flatten().copied().collect();
    let excluded = per_path.len() - used.len();
    let n = used.len();
    if n < 2 {
        return Err(Error::Contract("fewer than two usable paths".into()));
    }
    let c1: Vec<f64> = used.iter().map(|r| r.0).collect();
    let c2: Vec<f64> = used.iter().map(|r| r.1).collect();
    let c3: Vec<f64> = used.iter().map(|r| r.2).collect();
    let m1 = crate::parallel::mean(&c1);
    let m2 = crate::parallel::mean(&c2);
    let m3 = crate::parallel::mean(&c3);
    if !(m1 > 0.0) {
        return Err(Error::ZeroFunctional);
    }
    let ent = m3 / m1 - m1.ln();
    let energy = 2.0 * m2 / m1;
    let gap = energy - ent;
    let d1 = -(2.0 * m2 - m3) / (m1 * m1) + 1.0 / m1;
    let d2 = 2.0 / m1;
    let d3 = -1.0 / m1;
    let infl: Vec<f64> = used
        .iter()
        .map(|r| d1 * (r.0 - m1) + d2 * (r.1 - m2) + d3 * (r.2 - m3))
        .collect();
    let se = MeanSe::of(&infl).se;
    let frac = excluded as f64 / per_path.len() as f64;
    Ok(Estimate {
        estimate: gap,
        se,
        lhs: ent,
        rhs: energy,
        used: n,
        excluded,
        pass: gap >= -3.0 * se && frac <= MAX_EXCLUSION,
    })
}

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::damped_gradient::{CylindricalFunction, MAX_EXCLUSION};
use crate::error::{Error, Result};
use crate::geometry::{verify_curvature_bound, CurvatureReport, Frame, Geometry};
use crate::linalg::{compensated_sum, expm1_over, Matrix, Vector};
use crate::parallel::{mix64, MeanSe};
use crate::stochastic::{EnsembleSpec, HorizontalPath};

use super::{cost_matrix, sinkhorn_divergence, solve_transport, w2_sorted_1d, PathMetric, Provenance, WeightedPathEnsemble, ATOM_CAP};

/// Self-normalized estimate of μ(F log F) for μ(F) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate {
    pub estimate: f64,
    pub se: f64,
    pub normalizer: f64,
    pub n: usize,
}

/// Ent = μ̂(F log F)/μ̂(F) − log μ̂(F) with a delta-method SE. F is clamped at
/// 1e−300 inside the logarithm.
pub fn relative_entropy(values: &[f64]) -> Result<EntropyEstimate> {
    if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::Contract("F must be finite and nonnegative on every sample".into()));
    }
    let n = values.len();
    let m1 = crate::parallel::mean(values);
    if !(m1 > 0.0) {
        return Err(Error::ZeroFunctional);
    }
    let flogf: Vec<f64> = values.iter().map(|&f| f * f.max(1e-300).ln()).collect();
    let m2 = crate::parallel::mean(&flogf);
    let estimate = m2 / m1 - m1.ln();
    let infl: Vec<f64> = values
        .iter()
        .zip(&flogf)
        .map(|(&f, &fl)| (fl - m2) / m1 - (m2 / (m1 * m1) + 1.0 / m1) * (f - m1))
        .collect();
    let se = if n > 1 { MeanSe::of(&infl).se } else { f64::NAN };
    Ok(EntropyEstimate { estimate, se, normalizer: m1, n })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportOptions {
    pub metric: PathMetric,
    pub tol: f64,
    /// Entropic ε above the cap, relative to the median cost.
    pub sinkhorn_epsilon: f64,
    pub sinkhorn_iters: usize,
    /// Path points sampled per path for the curvature check (evenly spaced).
    pub curvature_points: usize,
}

impl Default for TransportOptions {
    fn default() -> Self {
        TransportOptions {
            metric: PathMetric::Uniform,
            tol: 0.15,
            sinkhorn_epsilon: 0.01,
            sinkhorn_iters: 20_000,
            curvature_points: 8,
        }
    }
}

/// Outcome of a transportation-cost certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportCertificate {
    /// Raw W₂²(Fμ, μ).
    pub lhs: f64,
    /// W₂² for the same weights randomly reassigned to the atoms.
    pub control: f64,
    pub rhs: f64,
    pub constant: f64,
    pub entropy: EntropyEstimate,
    /// (lhs − control)/rhs; 0 when both sides vanish.
    pub ratio: f64,
    pub w1: f64,
    pub w2: f64,
    pub atoms: usize,
    pub excluded: usize,
    pub exact: bool,
    pub slackness_residual: f64,
    pub curvature: CurvatureReport,
    pub pass: bool,
}

impl TransportCertificate {
    pub fn exclusion_fraction(&self) -> f64 {
        self.excluded as f64 / (self.atoms + self.excluded).max(1) as f64
    }

    /// SE of the rhs from the entropy estimate.
    pub fn rhs_se(&self) -> f64 {
        self.constant * self.entropy.se
    }
}

/// The initial law ν of a free-path certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialLaw {
    PointMass,
    /// Origin plus N(0, std²·Id) in chart coordinates.
    Gaussian { std: f64 },
}

impl InitialLaw {
    pub fn sample<G: Geometry + ?Sized>(&self, model: &G, seed: u64, index: usize) -> Result<Vector> {
        let o = model.origin();
        match *self {
            InitialLaw::PointMass => Ok(o),
            InitialLaw::Gaussian { std } => {
                let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed ^ 0x1A17_1A11, index as u64));
                let x = Vector::from_fn(o.len(), |i, _| {
                    o[i] + std * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng)
                });
                if !model.in_domain(&x) {
                    return Err(Error::domain("initial sample", x.as_slice()));
                }
                Ok(x)
            }
        }
    }
}

fn develop_ensemble<G: Geometry + ?Sized>(
    model: &G,
    spec: &EnsembleSpec,
    nu: &InitialLaw,
) -> (Vec<HorizontalPath>, usize) {
    let out = spec.map(|i| -> Option<HorizontalPath> {
        let x0 = nu.sample(model, spec.seed, i).ok()?;
        let u0 = Frame::canonical(model, x0).ok()?;
        let p = spec.develop_from(model, i, &u0).ok()?;
        p.require_complete().ok()?;
        Some(p)
    });
    let total = out.len();
    let kept: Vec<HorizontalPath> = out.into_iter().flatten().collect();
    let excluded = total - kept.len();
    (kept, excluded)
}

fn curvature_samples(paths: &[HorizontalPath], per_path: usize, origin: Vector) -> Vec<Vector> {
    let mut pts = vec![origin];
    for p in paths.iter().take(64) {
        let len = p.points.len();
        for s in 0..per_path.max(1) {
            pts.push(p.points[(s * (len - 1)) / per_path.max(1)].clone());
        }
        pts.push(p.endpoint().clone());
    }
    pts
}

struct Costs {
    w2: f64,
    w1: f64,
    control: f64,
    exact: bool,
    slackness: f64,
}

fn transport_costs(target: &[f64], control: &[f64], mu: &[f64], d: &Matrix, opts: &TransportOptions) -> Result<Costs> {
    let c = d.map(|x| x * x);
    if mu.len() <= ATOM_CAP {
        let main = solve_transport(target, mu, &c)?;
        let ctrl = solve_transport(control, mu, &c)?;
        let w1 = solve_transport(target, mu, d)?;
        return Ok(Costs {
            w2: main.plan.cost,
            w1: w1.plan.cost,
            control: ctrl.plan.cost,
            exact: true,
            slackness: main.slackness_residual.max(ctrl.slackness_residual),
        });
    }
    let median = |m: &Matrix| {
        let mut v: Vec<f64> = m.iter().copied().filter(|x| *x > 0.0).collect();
        v.sort_by(f64::total_cmp);
        v.get(v.len() / 2).copied().unwrap_or(1.0)
    };
    let eps2 = opts.sinkhorn_epsilon * median(&c);
    let eps1 = opts.sinkhorn_epsilon * median(d);
    let (w2, r) = sinkhorn_divergence(target, mu, &c, &c, &c, eps2, opts.sinkhorn_iters)?;
    let (control, _) = sinkhorn_divergence(control, mu, &c, &c, &c, eps2, opts.sinkhorn_iters)?;
    let (w1, _) = sinkhorn_divergence(target, mu, d, d, d, eps1, opts.sinkhorn_iters)?;
    Ok(Costs { w2: w2.max(0.0), w1: w1.max(0.0), control: control.max(0.0), exact: false, slackness: r.violation })
}

fn certify<G: Geometry + ?Sized>(
    model: &G,
    f: &CylindricalFunction,
    k: f64,
    spec: &EnsembleSpec,
    nu: &InitialLaw,
    c0: f64,
    opts: &TransportOptions,
) -> Result<TransportCertificate> {
    if !(opts.tol >= 0.0) {
        return Err(Error::Contract("tolerance must be nonnegative".into()));
    }
    let (paths, excluded) = develop_ensemble(model, spec, nu);
    if paths.len() < 2 {
        return Err(Error::Contract("fewer than two usable paths".into()));
    }
    let curvature = verify_curvature_bound(model, &curvature_samples(&paths, opts.curvature_points, model.origin()), k)?;
    if !curvature.pass {
        return Err(Error::CurvatureCheckFailed { k, min_eigenvalue: curvature.min_eigenvalue });
    }
    let values: Vec<f64> = paths.iter().map(|p| f.eval(p)).collect::<Result<_>>()?;
    let entropy = relative_entropy(&values)?;

    let paths = Arc::new(paths);
    let prov = Provenance { model: model.id(), seed: spec.seed, functional: f.id.clone() };
    let mu = WeightedPathEnsemble::uniform(paths.clone(), prov.clone())?;
    let fmu = WeightedPathEnsemble::reweighted(paths.clone(), &values, prov)?;
    let mut permuted = fmu.weights.clone();
    permuted.shuffle(&mut ChaCha8Rng::seed_from_u64(mix64(spec.seed, 0xC0_27_01)));
    let d = cost_matrix(model, &fmu, &mu, &opts.metric, 1, spec.workers)?;
    let costs = transport_costs(&fmu.weights, &permuted, &mu.weights, &d, opts)?;

    let constant = c0 * (k * spec.horizon).exp() + 2.0 * expm1_over(k, spec.horizon);
    let rhs = constant * entropy.estimate.max(0.0);
    let corrected = costs.w2 - costs.control;
    let ratio = if rhs > 0.0 {
        corrected / rhs
    } else if corrected <= 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let fraction = excluded as f64 / (paths.len() + excluded) as f64;
    Ok(TransportCertificate {
        lhs: costs.w2,
        control: costs.control,
        rhs,
        constant,
        entropy,
        ratio,
        w1: costs.w1,
        w2: costs.w2.max(0.0).sqrt(),
        atoms: paths.len(),
        excluded,
        exact: costs.exact,
        slackness_residual: costs.slackness,
        curvature,
        pass: corrected <= rhs * (1.0 + opts.tol) && fraction <= MAX_EXCLUSION,
    })
}

/// W₂²(Fμ, μ) ≤ 2(e^{KT}−1)/K·Ent(F) on one ensemble: Fμ reweights the atoms
/// of μ, the lhs comes from the exact LP (debiased Sinkhorn above the cap) and
/// a permuted-weight control run is subtracted before comparing.
/// Refuses to certify unless Ric − ∇Z ≥ −K holds on the sampled path points.
pub fn talagrand_certificate<G: Geometry + ?Sized>(
    model: &G,
    f: &CylindricalFunction,
    k: f64,
    spec: &EnsembleSpec,
    opts: &TransportOptions,
) -> Result<TransportCertificate> {
    certify(model, f, k, spec, &InitialLaw::PointMass, 0.0, opts)
}

/// The same pipeline with starts drawn from ν and constant
/// C₀e^{KT} + 2(e^{KT}−1)/K.
pub fn freepath_certificate<G: Geometry + ?Sized>(
    model: &G,
    nu: &InitialLaw,
    c0: f64,
    f: &CylindricalFunction,
    k: f64,
    spec: &EnsembleSpec,
    opts: &TransportOptions,
) -> Result<TransportCertificate> {
    if !(c0 >= 0.0) {
        return Err(Error::Contract("C0 must be nonnegative".into()));
    }
    certify(model, f, k, spec, nu, c0, opts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitialConstantCheck {
    /// (θ, W₂², C₀·Ent) per tilt.
    pub rows: Vec<(f64, f64, f64)>,
    pub worst_ratio: f64,
    pub pass: bool,
}

/// Checks W₂(fν, ν)² ≤ C₀ν(f log f) for ν = N(0, std²) on ℝ with exponential
/// tilts f ∝ e^{θx}, discretized on a 1000-point grid over ±8 std and solved
/// by the monotone coupling. Passes iff every ratio is ≤ 1 + 1e−3; the grid
/// quantization adds about h²/(4θ²) to the ratio, so keep θ ≥ 0.5.
pub fn validate_gaussian_constant(std: f64, c0: f64, thetas: &[f64]) -> Result<InitialConstantCheck> {
    if !(std > 0.0) {
        return Err(Error::Contract("std must be positive".into()));
    }
    let n = 1000;
    let xs: Vec<f64> = (0..n).map(|i| std * (-8.0 + 16.0 * (i as f64 + 0.5) / n as f64)).collect();
    let raw: Vec<f64> = xs.iter().map(|x| (-0.5 * (x / std) * (x / std)).exp()).collect();
    let z = compensated_sum(raw.iter().copied());
    let nu: Vec<f64> = raw.iter().map(|w| w / z).collect();
    let mut rows = Vec::new();
    let mut worst = 0.0_f64;
    for &theta in thetas {
        let lf: Vec<f64> = xs.iter().map(|x| theta * x).collect();
        let zf = compensated_sum(nu.iter().zip(&lf).map(|(w, l)| w * l.exp()));
        let tilted: Vec<f64> = nu.iter().zip(&lf).map(|(w, l)| w * l.exp() / zf).collect();
        let ent = compensated_sum(tilted.iter().zip(&lf).map(|(t, l)| t * (l - zf.ln())));
        let w2 = w2_sorted_1d(&xs, &tilted, &xs, &nu)?;
        let rhs = c0 * ent;
        worst = worst.max(if rhs > 0.0 { w2 / rhs } else if w2 > 0.0 { f64::INFINITY } else { 0.0 });
        rows.push((theta, w2, rhs));
    }
    Ok(InitialConstantCheck { rows, worst_ratio: worst, pass: worst <= 1.0 + 1e-3 })
}

//! Config-driven experiment runner: every certificate in the crate behind one
//! TOML schema and one CSV schema.

mod config;
mod report;

pub use config::{
    ChainSection, ConformalSection, CouplingSection, EllipticitySection, Example11Section, ExperimentConfig,
    ExperimentKind, FunctionalSpec, IbpSection, InitialSpec, LaplacianSection, MetricChoice, Tolerances,
    TransportSection,
};
pub use report::{gnuplot_stub, to_csv_string, write_csv, write_csv_file, write_gnuplot_stub, ReportRow, COLUMNS};

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::conformal::{
    approx_curvature_bound, conformal_connection_diff, conformal_ricci_fd_deviation, containment_ratio,
    laplacian_comparison, CutoffChain, TrigField,
};
use crate::damped_gradient::{ellipticity_floor, estimate_conditional_metric, ibp_residual, lsi_gap, MAX_EXCLUSION};
use crate::error::{Error, Result};
use crate::geometry::{Drift, Euclidean, Geometry, ManifoldModel, ModelSpec};
use crate::linalg::Vector;
use crate::parallel::mix64;
use crate::stochastic::{
    parallel_coupling, partition_indices, AdaptiveStepping, CameronMartinPath, DevelopOptions, EnsembleSpec,
};
use crate::transport::{
    freepath_certificate, talagrand_certificate, validate_gaussian_constant, InitialLaw, PathMetric,
    TransportCertificate, TransportOptions,
};

/// Process exit code for an error: 2 config, 1 refused certificate, 3 numeric.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. } | Error::Contract(_) | Error::Unsupported(_) | Error::Domain { .. } | Error::Io(_) => 2,
        Error::CurvatureCheckFailed { .. } | Error::AtomCapExceeded { .. } => 1,
        _ => 3,
    }
}

/// Runs `kind` (or the kind named in the config) and returns its rows.
/// Rows are identical for identical (config, seed) whatever `workers` is.
pub fn run_experiment(cfg: &ExperimentConfig, kind: Option<ExperimentKind>, workers: usize) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    let kind = cfg.kind(kind)?;
    let start = Instant::now();
    let model = cfg.model.build().map_err(as_config("model"))?;
    let mut spec = cfg.ensemble(workers);
    if cfg.adaptive {
        spec = spec.with_develop(DevelopOptions { adaptive: Some(AdaptiveStepping::default()), ..Default::default() });
    }
    let mut rows = match kind {
        ExperimentKind::Talagrand | ExperimentKind::TalagrandMarginal | ExperimentKind::Freepath => {
            transport_rows(cfg, kind, &model, &spec)?
        }
        ExperimentKind::Lsi => lsi_rows(cfg, &model, &spec)?,
        ExperimentKind::Ibp => ibp_rows(cfg, &model, &spec)?,
        ExperimentKind::Coupling => {
            let sec = cfg.coupling.as_ref().ok_or_else(|| Error::config("coupling", "missing [coupling] section"))?;
            coupling_report(&model, cfg.k, &sec.rho0, &spec, cfg.tolerance.coupling)?
                .iter()
                .map(|r| r.row(&model, cfg))
                .collect()
        }
        ExperimentKind::Example11 => example11_rows(cfg, &model, &spec)?,
        ExperimentKind::ConformalCheck => conformal_rows(cfg)?,
        ExperimentKind::LaplacianComparison => laplacian_rows(cfg, &model)?,
        ExperimentKind::AiEllipticity => ellipticity_rows(cfg, &model, &spec)?,
    };
    if cfg.record_wall_time {
        let t = start.elapsed().as_secs_f64();
        for r in &mut rows {
            r.wall_time = Some(t);
        }
    }
    Ok(rows)
}

fn as_config(path: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Config { .. } => e,
        other => Error::config(path, other.to_string()),
    }
}

fn functional(cfg: &ExperimentConfig, model: &ManifoldModel) -> Result<crate::damped_gradient::CylindricalFunction> {
    cfg.functional
        .as_ref()
        .ok_or_else(|| Error::config("functional", "this experiment needs a [functional] section"))?
        .build(cfg.horizon, model.ambient_dim())
}

fn ratio_of(lhs: f64, rhs: f64) -> f64 {
    if rhs != 0.0 {
        lhs / rhs
    } else if lhs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

// -- transport ----------------------------------------------------------------

fn transport_rows(
    cfg: &ExperimentConfig,
    kind: ExperimentKind,
    model: &ManifoldModel,
    spec: &EnsembleSpec,
) -> Result<Vec<ReportRow>> {
    let f = functional(cfg, model)?;
    let metric = match kind {
        ExperimentKind::TalagrandMarginal => {
            let times = cfg
                .partition
                .as_ref()
                .ok_or_else(|| Error::config("partition", "talagrand-marginal needs partition times"))?;
            PathMetric::Partition(partition_indices(times, spec.dt(), spec.steps).map_err(as_config("partition"))?)
        }
        _ => match cfg.transport.metric {
            MetricChoice::Uniform => PathMetric::Uniform,
            MetricChoice::Endpoint => PathMetric::Endpoint,
        },
    };
    let opts = TransportOptions { metric: metric.clone(), tol: cfg.tolerance.certificate, ..Default::default() };
    let mut rows = Vec::new();
    let cert = if kind == ExperimentKind::Freepath {
        let initial = cfg.transport.initial.unwrap_or(InitialSpec::PointMass);
        let (nu, c0) = match initial {
            InitialSpec::PointMass => (InitialLaw::PointMass, cfg.transport.c0.unwrap_or(0.0)),
            InitialSpec::Gaussian { std } => {
                let c0 = cfg
                    .transport
                    .c0
                    .ok_or_else(|| Error::config("transport.c0", "a Gaussian initial law needs its constant c0"))?;
                let check = validate_gaussian_constant(std, c0, &[0.5, 1.0, 1.5]).map_err(as_config("transport.initial"))?;
                let (_, w2, rhs) = check.rows.iter().copied().fold((0.0, 0.0, 0.0), |acc, r| {
                    if ratio_of(r.1, r.2) >= ratio_of(acc.1, acc.2) {
                        r
                    } else {
                        acc
                    }
                });
                rows.push(
                    ReportRow::new("freepath-c0", "gaussian-1d", format!("std={std};c0={c0};grid=1000"))
                        .sides(w2, rhs)
                        .constant(c0)
                        .ratio(check.worst_ratio)
                        .pass(check.pass),
                );
                (InitialLaw::Gaussian { std }, c0)
            }
        };
        freepath_certificate(model, &nu, c0, &f, cfg.k, spec, &opts)?
    } else {
        talagrand_certificate(model, &f, cfg.k, spec, &opts)?
    };
    let params = format!("F={};metric={};{}", f.id, metric.id(), cfg.echo());
    rows.push(certificate_row(kind.id(), model, &params, &cert));
    rows.push(
        ReportRow::new(format!("{}-w1", kind.id()), model.id(), params)
            .sides(cert.w1, cert.w2)
            .ratio(ratio_of(cert.w1, cert.w2))
            .pass(cert.w1 <= cert.w2 * (1.0 + 1e-9) + 1e-12),
    );
    Ok(rows)
}

fn certificate_row(id: &str, model: &ManifoldModel, params: &str, c: &TransportCertificate) -> ReportRow {
    ReportRow::new(id, model.id(), params)
        .sides(c.lhs, c.rhs)
        .constant(c.constant)
        .se(c.rhs_se())
        .control(c.control)
        .ratio(c.ratio)
        .pass(c.pass)
        .exclusion(c.exclusion_fraction())
}

// -- damped gradient -------------------------------------------------------------

fn lsi_rows(cfg: &ExperimentConfig, model: &ManifoldModel, spec: &EnsembleSpec) -> Result<Vec<ReportRow>> {
    let f = functional(cfg, model)?;
    let est = lsi_gap(model, &f, spec)?;
    Ok(vec![ReportRow::new("lsi", model.id(), format!("F={};{}", f.id, cfg.echo()))
        .sides(est.lhs, est.rhs)
        .constant(2.0)
        .se(est.se)
        .ratio(ratio_of(est.lhs, est.rhs))
        .pass(est.pass)
        .exclusion(est.exclusion_fraction())])
}

fn ibp_rows(cfg: &ExperimentConfig, model: &ManifoldModel, spec: &EnsembleSpec) -> Result<Vec<ReportRow>> {
    let f = functional(cfg, model)?;
    let d = model.dim();
    let dir = match &cfg.ibp.direction {
        Some(v) if v.len() != d => return Err(Error::config("ibp.direction", format!("length must equal dim = {d}"))),
        Some(v) => Vector::from_column_slice(v),
        None => Vector::from_fn(d, |i, _| if i == 0 { 1.0 } else { 0.0 }),
    };
    let h = CameronMartinPath::constant(cfg.horizon, cfg.n_steps, dir);
    let est = ibp_residual(model, &f, &h, spec)?;
    Ok(vec![ReportRow::new("ibp", model.id(), format!("F={};{}", f.id, cfg.echo()))
        .sides(est.lhs, est.rhs)
        .se(est.se)
        .ratio(ratio_of(est.estimate, est.se))
        .pass(est.pass)
        .exclusion(est.exclusion_fraction())])
}

fn ellipticity_rows(cfg: &ExperimentConfig, model: &ManifoldModel, spec: &EnsembleSpec) -> Result<Vec<ReportRow>> {
    let sec = cfg
        .ellipticity
        .as_ref()
        .ok_or_else(|| Error::config("ellipticity", "missing [ellipticity] section"))?;
    let times = cfg
        .partition
        .as_ref()
        .ok_or_else(|| Error::config("partition", "ai-ellipticity needs partition times"))?;
    let amb = model.ambient_dim();
    let anchor: Vec<Vector> = match &sec.anchor {
        None => vec![model.origin(); times.len()],
        Some(a) => {
            if a.len() != times.len() || a.iter().any(|p| p.len() != amb) {
                return Err(Error::config("ellipticity.anchor", "one chart point per partition time"));
            }
            a.iter().map(|p| Vector::from_column_slice(p)).collect()
        }
    };
    let metric = estimate_conditional_metric(model, times, &anchor, spec, sec.bandwidth)?;
    let rep = ellipticity_floor(&metric, sec.k1);
    let worst = rep.random_ratio.min(rep.exact_ratio);
    let params = format!(
        "partition={:?};k1={};bandwidth={};ess={:.1};{}",
        times, sec.k1, metric.bandwidth, metric.effective_samples, cfg.echo()
    );
    Ok(vec![ReportRow::new("ai-ellipticity", model.id(), params)
        .sides(rep.floor * worst, rep.floor * cfg.tolerance.ellipticity)
        .constant(rep.floor)
        .control(metric.asymmetry)
        .ratio(worst)
        .pass(worst >= cfg.tolerance.ellipticity && metric.reliable)
        .exclusion(1.0 - metric.samples as f64 / cfg.n_paths as f64)])
}

// -- coupling -----------------------------------------------------------------

/// Max over paths and grid of ρ(X_t, Y_t)/(ρ₀e^{Kt/2}) for one initial distance.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingRow {
    pub rho0: f64,
    pub k: f64,
    pub max_ratio: f64,
    pub aborted_fraction: f64,
    pub pass: bool,
    paths: usize,
}

impl CouplingRow {
    pub fn row(&self, model: &ManifoldModel, cfg: &ExperimentConfig) -> ReportRow {
        ReportRow::new("coupling", model.id(), format!("rho0={};paths={};{}", self.rho0, self.paths, cfg.echo()))
            .sides(self.max_ratio, 1.0 + cfg.tolerance.coupling)
            .constant(self.k)
            .ratio(self.max_ratio)
            .pass(self.pass)
            .exclusion(self.aborted_fraction)
    }
}

/// Couples paths from o and from the point at distance ρ₀ along the first
/// canonical axis by parallel displacement. Passes iff the max ratio is
/// ≤ 1 + tol and at most 1% of the couplings abort.
pub fn coupling_report<G: Geometry + ?Sized>(
    model: &G,
    k: f64,
    rho0: &[f64],
    spec: &EnsembleSpec,
    tol: f64,
) -> Result<Vec<CouplingRow>> {
    let o = model.origin();
    let e = model.canonical_frame(&o)?;
    let mut out = Vec::new();
    for &r0 in rho0 {
        if !(r0 > 0.0) {
            return Err(Error::config("coupling.rho0", "initial distances must be positive"));
        }
        let v = e.column(0) * r0;
        let (y0, _) = model.exp_transport(&o, &v.into_owned(), &[])?;
        let per = spec.map(|i| -> Option<f64> {
            let noise = spec.noise(model.dim(), i).ok()?;
            let c = parallel_coupling(model, &noise, &o, &y0).ok()?;
            let start = c.distances[0];
            let dt = noise.dt();
            let worst = c
                .distances
                .iter()
                .enumerate()
                .map(|(kk, d)| d / (start * (0.5 * k * kk as f64 * dt).exp()))
                .fold(0.0_f64, f64::max);
            Some(worst)
        });
        let ok: Vec<f64> = per.iter().flatten().copied().collect();
        let aborted = (per.len() - ok.len()) as f64 / per.len().max(1) as f64;
        let max_ratio = ok.iter().copied().fold(0.0_f64, f64::max);
        out.push(CouplingRow {
            rho0: r0,
            k,
            max_ratio,
            aborted_fraction: aborted,
            pass: !ok.is_empty() && max_ratio <= 1.0 + tol && aborted <= MAX_EXCLUSION,
            paths: per.len(),
        });
    }
    Ok(out)
}

// -- explosion sweep ----------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub lambda: f64,
    /// Estimate of E exp(λ sup_t |γ_t|²) on all paths (∞ if any exploded).
    pub full: f64,
    /// The same on the first half of the paths.
    pub half: f64,
    pub relative_change: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Example11Report {
    pub delta: f64,
    pub explosion_fraction: f64,
    pub moments: Vec<MomentEstimate>,
    pub paths: usize,
}

/// For each δ, develops paths from 0 under Z = ∇(1+|x|²)^δ on ℝ^dim (step
/// halving for δ > 1), and reports the explosion fraction before T and the
/// exp-moments E exp(λ sup|γ|²) with a sample-doubling stability check.
pub fn example11_sweep(
    dim: usize,
    deltas: &[f64],
    lambdas: &[f64],
    spec: &EnsembleSpec,
    stability: f64,
) -> Result<Vec<Example11Report>> {
    let mut out = Vec::new();
    for &delta in deltas {
        if !(delta > 0.0) {
            return Err(Error::config("example11.deltas", "δ must be positive"));
        }
        let model = Euclidean::new(dim, Drift::GradientPower { delta })?;
        let develop = DevelopOptions {
            adaptive: if delta > 1.0 { Some(AdaptiveStepping::default()) } else { spec.develop.adaptive },
            ..spec.develop
        };
        let s = spec.with_develop(develop);
        let sups = s.map(|i| -> Option<f64> {
            let p = s.develop(&model, i).ok()?;
            if p.is_exploded() {
                return Some(f64::INFINITY);
            }
            Some(p.points.iter().map(|x| x.norm_squared()).fold(0.0, f64::max))
        });
        let n = sups.len();
        let exploded = sups.iter().filter(|s| !matches!(s, Some(v) if v.is_finite())).count();
        let moment = |vals: &[Option<f64>], lambda: f64| -> f64 {
            let terms: Vec<f64> = vals.iter().map(|v| v.map_or(f64::INFINITY, |x| (lambda * x).exp())).collect();
            if terms.iter().any(|t| !t.is_finite()) {
                return f64::INFINITY;
            }
            crate::parallel::mean(&terms)
        };
        let moments = lambdas
            .iter()
            .map(|&lambda| {
                let full = moment(&sups, lambda);
                let half = moment(&sups[..n / 2], lambda);
                let rel = if full.is_finite() && half.is_finite() { (full - half).abs() / full } else { f64::INFINITY };
                MomentEstimate { lambda, full, half, relative_change: rel, stable: rel <= stability }
            })
            .collect();
        out.push(Example11Report { delta, explosion_fraction: exploded as f64 / n.max(1) as f64, moments, paths: n });
    }
    Ok(out)
}

fn example11_rows(cfg: &ExperimentConfig, model: &ManifoldModel, spec: &EnsembleSpec) -> Result<Vec<ReportRow>> {
    let sec = cfg
        .example11
        .as_ref()
        .ok_or_else(|| Error::config("example11", "missing [example11] section"))?;
    let dim = match &cfg.model {
        ModelSpec::Euclidean { dim, .. } => *dim,
        _ => return Err(Error::config("model.kind", "example11 runs on a Euclidean model")),
    };
    let _ = model;
    let reports = example11_sweep(dim, &sec.deltas, &sec.lambdas, spec, cfg.tolerance.stability)?;
    let mut rows = Vec::new();
    for r in &reports {
        let id = format!("euclidean(d={dim},grad-power(delta={}))", r.delta);
        let explosive = r.delta > 1.0;
        let (target, pass) = if explosive {
            (sec.min_explosion, r.explosion_fraction >= sec.min_explosion)
        } else {
            (0.0, r.explosion_fraction == 0.0)
        };
        rows.push(
            ReportRow::new("example11", id.clone(), format!("quantity=explosion;delta={};paths={};{}", r.delta, r.paths, cfg.echo()))
                .sides(r.explosion_fraction, target)
                .pass(pass),
        );
        for m in &r.moments {
            // δ ≤ 1: the moment must be finite and stable; δ > 1: it must be flagged.
            let pass = if explosive { !m.stable } else { m.stable };
            rows.push(
                ReportRow::new(
                    "example11",
                    id.clone(),
                    format!("quantity=exp-moment;delta={};lambda={};{}", r.delta, m.lambda, cfg.echo()),
                )
                .sides(m.full, m.half)
                .ratio(m.relative_change)
                .pass(pass),
            );
        }
    }
    Ok(rows)
}

// -- conformal ------------------------------------------------------------------

fn box_points(dim: usize, count: usize, radius: f64, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Vector::from_fn(dim, |_, _| rng.random_range(-radius..radius))).collect()
}

fn radial_points(dim: usize, count: usize, radius: f64, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = vec![Vector::zeros(dim)];
    for i in 0..count {
        let mut dir = Vector::from_fn(dim, |_, _| <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng));
        dir /= dir.norm();
        pts.push(dir * (radius * (i as f64 + 0.5) / count as f64));
    }
    pts
}

fn conformal_rows(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let (dim, drift, factor_spec) = match &cfg.model {
        ModelSpec::Conformal { dim, drift, factor } => (*dim, drift, factor),
        _ => return Err(Error::config("model.kind", "conformal-check needs a conformal model")),
    };
    let sec = cfg.conformal.clone().unwrap_or(ConformalSection { points: 64, fields: 10, radius: 1.0, chain: None });
    let base = Euclidean::new(dim, drift.build())?;
    let factor = factor_spec.build(dim)?;
    let seed = cfg.seed();
    let points: Vec<Vector> = box_points(dim, sec.points, sec.radius, mix64(seed, 1))
        .into_iter()
        .filter(|x| factor.value(x) >= 0.1)
        .collect();
    if points.is_empty() {
        return Err(Error::config("conformal.radius", "no sample point with f >= 0.1"));
    }
    let fields: Vec<TrigField> = (0..sec.fields).map(|i| TrigField::random(dim, 3, mix64(seed, 100 + i as u64))).collect();
    let model_id = format!("conformal(d={dim},{},{})", base.id(), factor.id());
    let echo = format!("points={};fields={};seed={seed}", points.len(), fields.len());
    let conn = conformal_connection_diff(&base, factor.as_ref(), &fields, &points)?;
    let ric = conformal_ricci_fd_deviation(&base, factor.as_ref(), &points)?;
    let mut contain = 0.0_f64;
    for fld in &fields {
        contain = contain.max(containment_ratio(&base, factor.as_ref(), fld, &points)?);
    }
    let mut rows = vec![
        ReportRow::new("conformal-check", model_id.clone(), format!("quantity=connection-fd;{echo}"))
            .sides(conn.max_fd_deviation, 1e-5)
            .ratio(conn.max_fd_deviation / 1e-5)
            .pass(conn.max_fd_deviation <= 1e-5),
        ReportRow::new("conformal-check", model_id.clone(), format!("quantity=connection-bound;{echo}"))
            .sides(conn.max_bound_ratio, 1.0)
            .ratio(conn.max_bound_ratio)
            .pass(conn.max_bound_ratio <= 1.0),
        ReportRow::new("conformal-check", model_id.clone(), format!("quantity=ricci-fd;{echo}"))
            .sides(ric, 1e-4)
            .ratio(ric / 1e-4)
            .pass(ric <= 1e-4),
        ReportRow::new("conformal-check", model_id.clone(), format!("quantity=containment;{echo}"))
            .sides(contain, 1.0)
            .ratio(contain)
            .pass(contain.is_finite() && contain <= 1.0),
    ];
    if let Some(chain_sec) = &sec.chain {
        let chain = CutoffChain::new(chain_sec.envelope.clone(), dim).map_err(as_config("conformal.chain.envelope"))?;
        let mut prev: Option<f64> = None;
        let mut first_defect = None;
        let mut last_defect = 0.0;
        for &n in &chain_sec.members {
            let member = chain.member(n).map_err(as_config("conformal.chain.members"))?;
            let pts = radial_points(dim, chain_sec.samples, member.support_radius_rho(), mix64(seed, 7));
            let rep = approx_curvature_bound(&base, &chain, n, &pts, chain_sec.c1)?;
            let pass = prev.is_none_or(|p| rep.k_n <= p + 1e-9) && rep.k_n >= cfg.k - 1e-9;
            let mut row = ReportRow::new(
                "conformal-check",
                model_id.clone(),
                format!("quantity=k_n;n={n};{};c1={};samples={}", chain_sec.envelope.id(), chain_sec.c1, rep.evaluated),
            )
            .constant(cfg.k)
            .control(rep.defect_sup)
            .pass(pass);
            row.lhs = Some(rep.k_n);
            row.rhs = prev;
            rows.push(row);
            prev = Some(rep.k_n);
            first_defect.get_or_insert(rep.defect_sup);
            last_defect = rep.defect_sup;
        }
        if let Some(d0) = first_defect {
            rows.push(
                ReportRow::new("conformal-check", model_id, format!("quantity=defect-halving;{}", chain_sec.envelope.id()))
                    .sides(last_defect, 0.5 * d0)
                    .ratio(ratio_of(last_defect, d0))
                    .pass(last_defect <= 0.5 * d0),
            );
        }
    }
    Ok(rows)
}

fn laplacian_rows(cfg: &ExperimentConfig, model: &ManifoldModel) -> Result<Vec<ReportRow>> {
    let sec = cfg
        .laplacian
        .as_ref()
        .ok_or_else(|| Error::config("laplacian", "missing [laplacian] section"))?;
    let rep = laplacian_comparison(model, &sec.envelope, cfg.k, &sec.radii)?;
    let mut rows = Vec::new();
    for r in &rep.rows {
        rows.push(
            ReportRow::new("laplacian-comparison", model.id(), format!("quantity=rho;rho={};{};K={}", r.rho, sec.envelope.id(), cfg.k))
                .sides(r.lhs, r.rhs)
                .constant(cfg.k)
                .ratio(ratio_of(r.lhs, r.rhs))
                .pass(r.lhs <= r.rhs),
        );
        rows.push(
            ReportRow::new(
                "laplacian-comparison",
                model.id(),
                format!("quantity=rho-tilde;rho={};{};K={}", r.rho, sec.envelope.id(), cfg.k),
            )
            .sides(r.lhs_tilde, r.rhs_tilde)
            .constant(cfg.k)
            .ratio(ratio_of(r.lhs_tilde, r.rhs_tilde))
            .pass(r.lhs_tilde <= r.rhs_tilde),
        );
    }
    Ok(rows)
}

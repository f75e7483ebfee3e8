//! Wasserstein distances between weighted path ensembles, relative entropy,
//! and the transportation-cost certificates.

mod certificates;
mod ensemble;
mod simplex;
mod sinkhorn;

pub use certificates::{
    freepath_certificate, relative_entropy, talagrand_certificate, validate_gaussian_constant, EntropyEstimate,
    InitialConstantCheck, InitialLaw, TransportCertificate, TransportOptions,
};
pub use ensemble::{cost_matrix, PathMetric, Provenance, WeightedPathEnsemble};
pub use simplex::{solve_transport, w2_sorted_1d, ExactSolution, TransportPlan, ATOM_CAP, SLACKNESS_TOL};
pub use sinkhorn::{sinkhorn, sinkhorn_divergence, SinkhornReport, SinkhornSolution, SINKHORN_TOL};

use crate::error::Result;
use crate::geometry::Geometry;

/// Exact W₂² and its plan under `metric`; errors above the atom cap.
pub fn w2_exact<G: Geometry + ?Sized>(
    model: &G,
    a: &WeightedPathEnsemble,
    b: &WeightedPathEnsemble,
    metric: &PathMetric,
    workers: usize,
) -> Result<(f64, ExactSolution)> {
    if a.len() > ATOM_CAP || b.len() > ATOM_CAP {
        return Err(crate::Error::AtomCapExceeded { atoms: a.len().max(b.len()), cap: ATOM_CAP });
    }
    let c = cost_matrix(model, a, b, metric, 2, workers)?;
    let sol = solve_transport(&a.weights, &b.weights, &c)?;
    Ok((sol.plan.cost, sol))
}

/// Entropic W₂² estimate (⟨π, c⟩ of the Sinkhorn plan) under `metric`.
pub fn w2_sinkhorn<G: Geometry + ?Sized>(
    model: &G,
    a: &WeightedPathEnsemble,
    b: &WeightedPathEnsemble,
    metric: &PathMetric,
    epsilon: f64,
    max_iters: usize,
    workers: usize,
) -> Result<SinkhornSolution> {
    let c = cost_matrix(model, a, b, metric, 2, workers)?;
    sinkhorn(&a.weights, &b.weights, &c, epsilon, max_iters)
}

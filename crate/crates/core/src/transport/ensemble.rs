use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::Matrix;
use crate::parallel::par_map;
use crate::stochastic::{uniform_distance, HorizontalPath};

/// Pathwise distance used as the transport cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathMetric {
    /// d_∞: sup over the grid.
    Uniform,
    /// d_I: max over the given grid indices.
    Partition(Vec<usize>),
    /// ρ(γ_T, η_T).
    Endpoint,
}

impl PathMetric {
    pub fn id(&self) -> String {
        match self {
            PathMetric::Uniform => "d_inf".into(),
            PathMetric::Partition(idx) => {
                let parts: Vec<String> = idx.iter().map(|k| k.to_string()).collect();
                format!("d_I[{}]", parts.join(";"))
            }
            PathMetric::Endpoint => "endpoint".into(),
        }
    }

    pub fn distance<G: Geometry + ?Sized>(&self, model: &G, a: &HorizontalPath, b: &HorizontalPath) -> Result<f64> {
        match self {
            PathMetric::Uniform => uniform_distance(model, a, b, None),
            PathMetric::Partition(idx) => uniform_distance(model, a, b, Some(idx)),
            PathMetric::Endpoint => {
                a.require_complete()?;
                b.require_complete()?;
                model.distance(a.endpoint(), b.endpoint())
            }
        }
    }
}

/// Where an ensemble came from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Provenance {
    pub model: String,
    pub seed: u64,
    pub functional: String,
}

/// Atoms on a common grid with probability weights.
#[derive(Debug, Clone)]
pub struct WeightedPathEnsemble {
    pub paths: Arc<Vec<HorizontalPath>>,
    pub weights: Vec<f64>,
    pub provenance: Provenance,
}

impl WeightedPathEnsemble {
    /// Uniform weights.
    pub fn uniform(paths: Arc<Vec<HorizontalPath>>, provenance: Provenance) -> Result<Self> {
        let n = paths.len();
        Self::new(paths, vec![1.0 / n.max(1) as f64; n], provenance)
    }

    /// Weights w_i / Σ w_j on the same atoms.
    pub fn reweighted(paths: Arc<Vec<HorizontalPath>>, raw: &[f64], provenance: Provenance) -> Result<Self> {
        if raw.len() != paths.len() {
            return Err(Error::Contract("one weight per atom".into()));
        }
        if raw.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::Contract("weights must be finite and nonnegative".into()));
        }
        let total = crate::linalg::compensated_sum(raw.iter().copied());
        if !(total > 0.0) {
            return Err(Error::ZeroFunctional);
        }
        Self::new(paths, raw.iter().map(|w| w / total).collect(), provenance)
    }

    pub fn new(paths: Arc<Vec<HorizontalPath>>, weights: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if paths.is_empty() || weights.len() != paths.len() {
            return Err(Error::Contract("ensemble needs one weight per atom and at least one atom".into()));
        }
        let total = crate::linalg::compensated_sum(weights.iter().copied());
        if weights.iter().any(|w| !(*w >= 0.0)) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::Contract(format!("weights must be nonnegative and sum to 1 (sum {total})")));
        }
        let (dt, len) = (paths[0].dt, paths[0].points.len());
        for p in paths.iter() {
            p.require_complete()?;
            if p.points.len() != len || (p.dt - dt).abs() > 1e-15 * dt {
                return Err(Error::Contract("atoms live on different grids".into()));
            }
        }
        Ok(WeightedPathEnsemble { paths, weights, provenance })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Matrix of metric(a_i, b_j)^power, rows assembled in parallel.
pub fn cost_matrix<G: Geometry + ?Sized>(
    model: &G,
    a: &WeightedPathEnsemble,
    b: &WeightedPathEnsemble,
    metric: &PathMetric,
    power: i32,
    workers: usize,
) -> Result<Matrix> {
    let rows = par_map(workers, a.len(), |i| -> Result<Vec<f64>> {
        b.paths
            .iter()
            .map(|q| metric.distance(model, &a.paths[i], q).map(|d| d.powi(power)))
            .collect()
    });
    let mut c = Matrix::zeros(a.len(), b.len());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row?.into_iter().enumerate() {
            c[(i, j)] = v;
        }
    }
    Ok(c)
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::{sym, Matrix, Vector};
use crate::stochastic::{partition_indices, EnsembleSpec};

use super::solve_damped_flow;

/// Effective sample size below which an estimate is flagged.
pub const MIN_ESS: f64 = 30.0;

/// Kernel estimate of A^I(z) in canonical orthonormal frames at the marginals.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalMetric {
    pub partition: Vec<f64>,
    pub anchor: Vec<Vector>,
    /// (Nd)×(Nd), symmetrized.
    pub a: Matrix,
    pub samples: usize,
    pub effective_samples: f64,
    pub bandwidth: f64,
    /// ‖A − Aᵀ‖_F / ‖A‖_F before symmetrization.
    pub asymmetry: f64,
    pub reliable: bool,
}

/// Per-path integrand Σ_{i,j} blocks ∫₀^{s_i∧s_j} R_j Q_{s_j,s} Q*_{s_i,s} R_iᵀ ds,
/// with R_i rotating u_{s_i} into the canonical frame at γ_{s_i}.
fn path_matrix<G: Geometry + ?Sized>(
    model: &G,
    spec: &EnsembleSpec,
    idx: &[usize],
    i: usize,
) -> Option<(Vec<Vector>, Matrix)> {
    let path = spec.develop(model, i).ok()?;
    path.require_complete().ok()?;
    let flow = solve_damped_flow(model, &path).ok()?;
    let d = flow.dim();
    let nslots = idx.len();
    let mut rot = Vec::with_capacity(nslots);
    for &k in idx {
        let x = &path.points[k];
        let c = model.canonical_frame(x).ok()?;
        let g = model.metric(x).ok()?;
        rot.push(c.transpose() * g * &path.frames[k]);
    }
    // m[j][k] = Q_{s_j, t_k} for k ≤ idx_j
    let mut m: Vec<Vec<Matrix>> = Vec::with_capacity(nslots);
    for &kj in idx {
        let mut col = vec![Matrix::zeros(d, d); kj + 1];
        col[kj] = Matrix::identity(d, d);
        for k in (0..kj).rev() {
            col[k] = &col[k + 1] * &flow.phi[k];
        }
        m.push(col);
    }
    let mut big = Matrix::zeros(nslots * d, nslots * d);
    for a in 0..nslots {
        for b in 0..=a {
            let top = idx[a].min(idx[b]);
            let mut blk = Matrix::zeros(d, d);
            for k in 0..top {
                let l = &m[a][k] * m[b][k].transpose();
                let ma = &m[a][k + 1] * &flow.half[k];
                let mb = &m[b][k + 1] * &flow.half[k];
                let mid = &ma * mb.transpose();
                let r = &m[a][k + 1] * m[b][k + 1].transpose();
                blk += (l + mid * 4.0 + r) * (flow.dt / 6.0);
            }
            let blk = &rot[a] * blk * rot[b].transpose();
            big.view_mut((a * d, b * d), (d, d)).copy_from(&blk);
            if a != b {
                big.view_mut((b * d, a * d), (d, d)).copy_from(&blk.transpose());
            }
        }
    }
    let pts = idx.iter().map(|&k| path.points[k].clone()).collect();
    Some((pts, big))
}

/// Nadaraya–Watson estimate of A^I at `anchor` with a Gaussian kernel in
/// chart coordinates. With `bandwidth = None` the bandwidth is 0.2 times the
/// mean marginal standard deviation.
pub fn estimate_conditional_metric<G: Geometry + ?Sized>(
    model: &G,
    partition: &[f64],
    anchor: &[Vector],
    spec: &EnsembleSpec,
    bandwidth: Option<f64>,
) -> Result<ConditionalMetric> {
    if anchor.len() != partition.len() {
        return Err(Error::Contract("anchor needs one point per partition time".into()));
    }
    if let Some(bw) = bandwidth {
        if !(bw > 0.0) {
            return Err(Error::Contract("bandwidth must be positive".into()));
        }
    }
    let idx = partition_indices(partition, spec.dt(), spec.steps)?;
    let rows = spec.map(|i| path_matrix(model, spec, &idx, i));
    let used: Vec<&(Vec<Vector>, Matrix)> = rows.iter().flatten().collect();
    if used.is_empty() {
        return Err(Error::Contract("no usable paths".into()));
    }
    let bw = match bandwidth {
        Some(b) => b,
        None => {
            let mut total = 0.0;
            let mut count = 0.0;
            for slot in 0..idx.len() {
                let dim = used[0].0[slot].len();
                for c in 0..dim {
                    let vals: Vec<f64> = used.iter().map(|r| r.0[slot][c]).collect();
                    let m = crate::parallel::mean(&vals);
                    let var = vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (vals.len() as f64 - 1.0).max(1.0);
                    total += var.sqrt();
                    count += 1.0;
                }
            }
            let b = 0.2 * total / count;
            if !(b > 0.0) {
                1.0
            } else {
                b
            }
        }
    };
    let logw: Vec<f64> = used
        .iter()
        .map(|(pts, _)| {
            -pts.iter().zip(anchor).map(|(p, z)| (p - z).norm_squared()).sum::<f64>() / (2.0 * bw * bw)
        })
        .collect();
    let top = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = logw.iter().map(|l| (l - top).exp()).collect();
    let sw: f64 = crate::linalg::compensated_sum(w.iter().copied());
    let sw2: f64 = crate::linalg::compensated_sum(w.iter().map(|x| x * x));
    let dim = used[0].1.nrows();
    let mut acc = Matrix::zeros(dim, dim);
    for (wi, (_, m)) in w.iter().zip(&used) {
        acc += m * *wi;
    }
    let a = acc / sw;
    let asym = (&a - a.transpose()).norm() / a.norm().max(1e-300);
    let ess = sw * sw / sw2;
    Ok(ConditionalMetric {
        partition: partition.to_vec(),
        anchor: anchor.to_vec(),
        a: sym(&a),
        samples: used.len(),
        effective_samples: ess,
        bandwidth: bw,
        asymmetry: asym,
        reliable: ess >= MIN_ESS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticityReport {
    /// min over probed unit a of ⟨Aa,a⟩ / floor.
    pub random_ratio: f64,
    /// λ_min(A) / floor.
    pub exact_ratio: f64,
    pub floor: f64,
    pub pass: bool,
}

/// Compares ⟨Aa,a⟩ with |a|² N⁻¹ e^{−K₁(s_N−s_{N−1})}(s_N−s_{N−1}) over 4096
/// seeded random unit directions and the exact minimum eigenvalue; passes iff
/// the worst ratio is ≥ 0.9.
pub fn ellipticity_floor(metric: &ConditionalMetric, k1: f64) -> EllipticityReport {
    let s = &metric.partition;
    let n = s.len();
    let gap = if n == 1 { s[0] } else { s[n - 1] - s[n - 2] };
    let floor = (-k1 * gap).exp() * gap / n as f64;
    let dim = metric.a.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(0xE111_9710);
    let mut worst = f64::INFINITY;
    for _ in 0..4096 {
        let mut v = Vector::from_fn(dim, |_, _| <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng));
        v /= v.norm();
        worst = worst.min((v.transpose() * &metric.a * &v)[(0, 0)] / floor);
    }
    let exact = crate::linalg::min_sym_eigenvalue(&metric.a) / floor;
    EllipticityReport {
        random_ratio: worst,
        exact_ratio: exact,
        floor,
        pass: worst.min(exact) >= 0.9,
    }
}

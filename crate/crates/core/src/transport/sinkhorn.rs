use crate::error::{Error, Result};
use crate::linalg::{compensated_sum, Matrix};

use super::TransportPlan;

/// Marginal violation at which the iterations stop.
pub const SINKHORN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinkhornReport {
    pub iterations: usize,
    /// Σ_i |π·1 − a|_i after the last column update.
    pub violation: f64,
    pub converged: bool,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SinkhornSolution {
    /// ⟨π, c⟩ for the entropic plan.
    pub transport_cost: f64,
    /// Entropic objective Σ f a + Σ g b.
    pub dual_value: f64,
    pub plan: TransportPlan,
    pub report: SinkhornReport,
}

fn log_sum_exp(xs: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = xs.collect();
    let top = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + v.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

/// Log-domain Sinkhorn with ε-scaling from the largest cost down to `epsilon`.
/// Stops when the row-marginal violation is ≤ 1e−9 or after `max_iters`
/// sweeps; a non-converged run is reported, not raised.
pub fn sinkhorn(a: &[f64], b: &[f64], c: &Matrix, epsilon: f64, max_iters: usize) -> Result<SinkhornSolution> {
    let (m, n) = (a.len(), b.len());
    if !(epsilon > 0.0) {
        return Err(Error::Contract("epsilon must be positive".into()));
    }
    if c.nrows() != m || c.ncols() != n || m == 0 || n == 0 {
        return Err(Error::Contract("cost matrix does not match the weight vectors".into()));
    }
    let la: Vec<f64> = a.iter().map(|w| w.ln()).collect();
    let lb: Vec<f64> = b.iter().map(|w| w.ln()).collect();
    let cmax = c.iter().fold(0.0_f64, |acc, x| acc.max(*x));
    let mut f = vec![0.0; m];
    let mut g = vec![0.0; n];
    let mut eps = cmax.max(epsilon);
    let mut iterations = 0;
    let mut violation = f64::INFINITY;
    loop {
        let last = eps <= epsilon;
        let stage_cap = if last { max_iters.saturating_sub(iterations) } else { 50 };
        for _ in 0..stage_cap {
            iterations += 1;
            for i in 0..m {
                f[i] = -eps * log_sum_exp((0..n).map(|j| (g[j] - c[(i, j)]) / eps + lb[j]));
            }
            for j in 0..n {
                g[j] = -eps * log_sum_exp((0..m).map(|i| (f[i] - c[(i, j)]) / eps + la[i]));
            }
            if last {
                violation = compensated_sum((0..m).map(|i| {
                    let row = (0..n).map(|j| ((f[i] + g[j] - c[(i, j)]) / eps + la[i] + lb[j]).exp()).sum::<f64>();
                    (row - a[i]).abs()
                }));
                if violation <= SINKHORN_TOL {
                    break;
                }
            }
        }
        if last {
            break;
        }
        eps = (eps * 0.5).max(epsilon);
    }
    let mut pi = Matrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            pi[(i, j)] = ((f[i] + g[j] - c[(i, j)]) / eps + la[i] + lb[j]).exp();
        }
    }
    let transport_cost = compensated_sum(pi.iter().zip(c.iter()).map(|(p, x)| p * x));
    let dual_value = compensated_sum(
        f.iter().zip(a).filter(|(_, w)| **w > 0.0).map(|(x, w)| x * w).chain(g.iter().zip(b).filter(|(_, w)| **w > 0.0).map(|(x, w)| x * w)),
    );
    Ok(SinkhornSolution {
        transport_cost,
        dual_value,
        plan: TransportPlan { pi, cost: transport_cost },
        report: SinkhornReport { iterations, violation, converged: violation <= SINKHORN_TOL, epsilon },
    })
}

/// S(a, a) by the averaged symmetric update f ← ½(f + T f), with the same
/// ε-scaling and stopping rule as [`sinkhorn`]. Returns (2 Σ f a, report).
fn symmetric_self_cost(a: &[f64], c: &Matrix, epsilon: f64, max_iters: usize) -> Result<(f64, SinkhornReport)> {
    let n = a.len();
    if !(epsilon > 0.0) {
        return Err(Error::Contract("epsilon must be positive".into()));
    }
    if c.nrows() != n || c.ncols() != n || n == 0 {
        return Err(Error::Contract("cost matrix does not match the weight vectors".into()));
    }
    let la: Vec<f64> = a.iter().map(|w| w.ln()).collect();
    let cmax = c.iter().fold(0.0_f64, |acc, x| acc.max(*x));
    let mut f = vec![0.0; n];
    let mut eps = cmax.max(epsilon);
    let mut iterations = 0;
    let mut violation = f64::INFINITY;
    loop {
        let last = eps <= epsilon;
        let stage_cap = if last { max_iters.saturating_sub(iterations) } else { 50 };
        for _ in 0..stage_cap {
            iterations += 1;
            let t: Vec<f64> = (0..n)
                .map(|i| -eps * log_sum_exp((0..n).map(|j| (f[j] - c[(i, j)]) / eps + la[j])))
                .collect();
            for i in 0..n {
                f[i] = 0.5 * (f[i] + t[i]);
            }
            if last {
                violation = compensated_sum((0..n).map(|i| {
                    let row = (0..n).map(|j| ((f[i] + f[j] - c[(i, j)]) / eps + la[i] + la[j]).exp()).sum::<f64>();
                    (row - a[i]).abs()
                }));
                if violation <= SINKHORN_TOL {
                    break;
                }
            }
        }
        if last {
            break;
        }
        eps = (eps * 0.5).max(epsilon);
    }
    let value = 2.0 * compensated_sum(f.iter().zip(a).filter(|(_, w)| **w > 0.0).map(|(x, w)| x * w));
    Ok((value, SinkhornReport { iterations, violation, converged: violation <= SINKHORN_TOL, epsilon }))
}

/// Debiased entropic cost S(a,b) − ½S(a,a) − ½S(b,b) on the dual objective;
/// the self terms use the symmetric fixed-point iteration.
pub fn sinkhorn_divergence(
    a: &[f64],
    b: &[f64],
    cab: &Matrix,
    caa: &Matrix,
    cbb: &Matrix,
    epsilon: f64,
    max_iters: usize,
) -> Result<(f64, SinkhornReport)> {
    let ab = sinkhorn(a, b, cab, epsilon, max_iters)?;
    let (aa, ra) = symmetric_self_cost(a, caa, epsilon, max_iters)?;
    let (bb, rb) = symmetric_self_cost(b, cbb, epsilon, max_iters)?;
    let mut report = ab.report;
    report.converged &= ra.converged && rb.converged;
    report.violation = report.violation.max(ra.violation).max(rb.violation);
    Ok((ab.dual_value - 0.5 * (aa + bb), report))
}

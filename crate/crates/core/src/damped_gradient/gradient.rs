use crate::error::{Error, Result};
use crate::linalg::{expm1_over, Vector};
use crate::stochastic::{CameronMartinPath, HorizontalPath};

use super::{resolvent_shift, CylindricalFunction, DampedFlow};

/// D̃_sF and D_sF on the grid intervals: `left[k]`, `mid[k]`, `right[k]` are
/// D̃ at t_k+, t_k + dt/2 and t_{k+1}−; `plain[k]` is D on (t_k, t_{k+1}).
#[derive(Debug, Clone, PartialEq)]
pub struct DampedGradient {
    pub dt: f64,
    pub left: Vec<Vector>,
    pub mid: Vec<Vector>,
    pub right: Vec<Vector>,
    pub plain: Vec<Vector>,
    /// b_k = Σ_{s_j ≥ t_k} Q*_{s_j,t_k} a_j at grid points.
    pub grid: Vec<Vector>,
    /// Pulled-back slot gradients and their grid indices.
    pub anchors: Vec<Vector>,
    pub indices: Vec<usize>,
}

impl DampedGradient {
    /// ∫₀^T |D̃_sF|² ds by Simpson's rule on each interval.
    pub fn energy(&self) -> f64 {
        let mut s = 0.0;
        for k in 0..self.left.len() {
            s += self.left[k].norm_squared() + 4.0 * self.mid[k].norm_squared() + self.right[k].norm_squared();
        }
        s * self.dt / 6.0
    }

    /// ∫₀^T |D_sF|² ds.
    pub fn plain_energy(&self) -> f64 {
        self.plain.iter().map(|v| v.norm_squared()).sum::<f64>() * self.dt
    }

    /// Σ_j |a_j| = Σ_j |∂_j f|_g.
    pub fn anchor_norm_sum(&self) -> f64 {
        self.anchors.iter().map(|a| a.norm()).sum()
    }
}

/// D̃_sF = Σ_j Q*_{s_j,s} u⁻¹_{s_j}(∂_j f) 1_{s<s_j}, built by the backward
/// recursion b_k = Φ_kᵀ b_{k+1} + Σ_{idx_j = k} a_j.
pub fn damped_gradient_of(
    f: &CylindricalFunction,
    path: &HorizontalPath,
    flow: &DampedFlow,
) -> Result<DampedGradient> {
    path.require_complete()?;
    if flow.steps() != path.steps() {
        return Err(Error::Contract("flow and path grids differ".into()));
    }
    let (indices, anchors) = f.anchors(path)?;
    let n = flow.steps();
    let d = flow.dim();
    let mut grid = vec![Vector::zeros(d); n + 1];
    let mut plain_grid = vec![Vector::zeros(d); n + 1];
    let mut slot = indices.len();
    let mut b = Vector::zeros(d);
    let mut p = Vector::zeros(d);
    for k in (0..=n).rev() {
        if k < n {
            b = flow.phi[k].transpose() * &b;
        }
        while slot > 0 && indices[slot - 1] == k {
            slot -= 1;
            b += &anchors[slot];
            p += &anchors[slot];
        }
        grid[k] = b.clone();
        plain_grid[k] = p.clone();
    }
    let mut left = Vec::with_capacity(n);
    let mut mid = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut plain = Vec::with_capacity(n);
    // on (t_k, t_{k+1}) only slots with index ≥ k+1 contribute
    for k in 0..n {
        let r = grid[k + 1].clone();
        left.push(flow.phi[k].transpose() * &r);
        mid.push(flow.half[k].transpose() * &r);
        right.push(r);
        plain.push(plain_grid[k + 1].clone());
    }
    Ok(DampedGradient { dt: flow.dt, left, mid, right, plain, grid, anchors, indices })
}

/// Both sides of ∫⟨D_sF, dh̃/ds⟩ds = ∫⟨D̃_sF, ḣ⟩ds, evaluated as
/// Σ_j ⟨a_j, h̃(s_j)⟩ and Σ_k ⟨W_kᵀ b_{k+1}, ḣ_k⟩.
pub fn duality_sides(grad: &DampedGradient, flow: &DampedFlow, h: &CameronMartinPath) -> Result<(f64, f64)> {
    let shifted = resolvent_shift(h, flow)?.values();
    let lhs: f64 = grad
        .indices
        .iter()
        .zip(&grad.anchors)
        .map(|(&k, a)| a.dot(&shifted[k]))
        .sum();
    let rhs: f64 = (0..flow.steps())
        .map(|k| (flow.weights[k].transpose() * &grad.grid[k + 1]).dot(&h.hdot[k]))
        .sum();
    Ok((lhs, rhs))
}

/// Pathwise ∫|D̃_sF|² ≤ (e^{KT}−1)/K (Σ_j|∂_j f|_g)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBound {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

pub fn damped_energy_bound(
    f: &CylindricalFunction,
    path: &HorizontalPath,
    flow: &DampedFlow,
    k: f64,
    horizon: f64,
) -> Result<EnergyBound> {
    if k < 0.0 {
        return Err(Error::Contract("K must be nonnegative".into()));
    }
    let g = damped_gradient_of(f, path, flow)?;
    let lhs = g.energy();
    let s = g.anchor_norm_sum();
    let rhs = expm1_over(k, horizon) * s * s;
    Ok(EnergyBound { lhs, rhs, pass: lhs <= rhs * (1.0 + 1e-6) })
}

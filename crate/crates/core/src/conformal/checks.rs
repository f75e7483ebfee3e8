use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{ricci_z_matrix, Euclidean, Frame, Geometry};
use crate::linalg::{min_sym_eigenvalue, Vector};

use super::cutoff::{CutoffChain, Envelope};
use super::{ConformalFactor, ConformalModel};

/// Outcome of [`approx_curvature_bound`] for a single chain member.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureBoundReport {
    pub n: f64,
    /// −min eigenvalue of sym(Ric^n − ∇^n Z_n) over evaluated points.
    pub k_n: f64,
    /// sup |f_n(Δ+Z)f_n − c₁(|∇f_n|² + |Z||∇f_n|)|.
    pub defect_sup: f64,
    /// sup |f_n(Δ+Z)f_n|.
    pub defect_laplacian_sup: f64,
    /// sup (|∇f_n|² + |Z||∇f_n|).
    pub defect_gradient_sup: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Lower Ricci bound of the conformally changed model (ℝ^d, f_n⁻²g) with drift
/// Z_n, sampled over `points`; points outside the support are skipped.
pub fn approx_curvature_bound(
    base: &Euclidean,
    chain: &CutoffChain,
    n: f64,
    points: &[Vector],
    c1: f64,
) -> Result<CurvatureBoundReport> {
    let member = chain.member(n)?;
    let factor: Arc<dyn ConformalFactor> = Arc::new(member.clone());
    let model = ConformalModel { base: base.clone(), factor };
    let mut k_n = f64::NEG_INFINITY;
    let mut sup = 0.0_f64;
    let mut sup_a = 0.0_f64;
    let mut sup_b = 0.0_f64;
    let mut evaluated = 0;
    let mut skipped = 0;
    for x in points {
        let f = member.value(x);
        if !(f > super::formulas::NEAR_BOUNDARY) {
            skipped += 1;
            continue;
        }
        let frame = Frame::canonical(&model, x.clone())?;
        let lam = min_sym_eigenvalue(&ricci_z_matrix(&model, &frame)?);
        k_n = k_n.max(-lam);

        let df = member.gradient(x);
        let lap = member.hessian(x).trace();
        let z = base.drift(x)?;
        let a = f * (lap + z.dot(&df));
        let b = df.norm_squared() + z.norm() * df.norm();
        sup_a = sup_a.max(a.abs());
        sup_b = sup_b.max(b);
        sup = sup.max((a - c1 * b).abs());
        evaluated += 1;
    }
    if evaluated == 0 {
        return Err(Error::Contract("no sample point inside the support".into()));
    }
    Ok(CurvatureBoundReport {
        n,
        k_n,
        defect_sup: sup,
        defect_laplacian_sup: sup_a,
        defect_gradient_sup: sup_b,
        evaluated,
        skipped,
    })
}

/// One radius of [`laplacian_comparison`].
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianRow {
    pub rho: f64,
    /// (Δ+Z)ρ_o
    pub lhs: f64,
    /// K + 1 + ψ(ρ)
    pub rhs: f64,
    /// (Δ+Z)ρ̃
    pub lhs_tilde: f64,
    /// K + 2 + ψ(ρ̃ + 1)
    pub rhs_tilde: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianReport {
    pub rows: Vec<LaplacianRow>,
    pub pass_rho: bool,
    pub pass_tilde: bool,
    /// max lhs/rhs over both versions.
    pub worst_ratio: f64,
}

/// Evaluates (Δ+Z)ρ_o ≤ K+1+ψ(ρ_o) and (Δ+Z)ρ̃ ≤ K+2+ψ(ρ̃+1) for ρ ≥ 1 along
/// the first frame axis, with ρ̃ = √(1+ρ²) and the closed-form radial Laplacian.
pub fn laplacian_comparison<G: Geometry + ?Sized>(
    model: &G,
    psi: &Envelope,
    k: f64,
    radii: &[f64],
) -> Result<LaplacianReport> {
    psi.validate()?;
    if model.radial_laplacian(1.0).is_none() {
        return Err(Error::Unsupported(format!("{} has no closed-form radial Laplacian", model.id())));
    }
    let o = model.origin();
    let e = model.canonical_frame(&o)?;
    let dir = e.column(0).into_owned();
    let mut rows = Vec::new();
    let mut worst = 0.0_f64;
    let (mut pass_rho, mut pass_tilde) = (true, true);
    for &rho in radii.iter().filter(|&&r| r >= 1.0) {
        let lap = model.radial_laplacian(rho).expect("checked above");
        let (x, radial) = model.exp_transport(&o, &(&dir * rho), std::slice::from_ref(&dir))?;
        let z = model.drift(&x)?;
        let z_rho = crate::linalg::inner_g(&model.metric(&x)?, &z, &radial[0]);
        let lhs = lap + z_rho;
        let rhs = k + 1.0 + psi.value(rho);
        let rt = (1.0 + rho * rho).sqrt();
        let lhs_tilde = (rho / rt) * lhs + 1.0 / (rt * rt * rt);
        let rhs_tilde = k + 2.0 + psi.value(rt + 1.0);
        pass_rho &= lhs <= rhs;
        pass_tilde &= lhs_tilde <= rhs_tilde;
        worst = worst.max(lhs / rhs).max(lhs_tilde / rhs_tilde);
        rows.push(LaplacianRow { rho, lhs, rhs, lhs_tilde, rhs_tilde });
    }
    Ok(LaplacianReport { rows, pass_rho, pass_tilde, worst_ratio: worst })
}

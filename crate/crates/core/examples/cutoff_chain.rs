//! The cutoff chain f_n = h₀(I(ρ̃)/n) for ψ = 1 + 1.6t^0.6: support radii,
//! plateau radii, and the curvature lower bound K_n of (ℝ³, f_n⁻²g, Z_n).

use pathspace::conformal::{approx_curvature_bound, CutoffChain, Envelope};
use pathspace::geometry::{Drift, Euclidean};
use pathspace::Vector;

fn main() -> pathspace::Result<()> {
    let psi = Envelope::Power { a: 1.0, b: 1.6, p: 0.6 };
    let chain = CutoffChain::new(psi, 3)?;
    let base = Euclidean::new(3, Drift::GradientPower { delta: 0.8 })?;

    for n in [2.0, 4.0, 8.0, 16.0] {
        let m = chain.member(n)?;
        let r = m.support_radius_rho();
        // radial samples along a few directions
        let pts: Vec<Vector> = (0..200)
            .map(|i| {
                let dir = Vector::from_vec(vec![(i as f64).cos(), (i as f64).sin(), ((i % 7) as f64 - 3.0) / 3.0]).normalize();
                dir * (r * (i as f64 + 0.5) / 200.0)
            })
            .collect();
        let rep = approx_curvature_bound(&base, &chain, n, &pts, 1.0)?;
        println!(
            "n = {n:>4}: plateau {:.3}, support {:.3}, K_n {:.4}, defect {:.4}",
            m.plateau_radius_rho(),
            r,
            rep.k_n,
            rep.defect_sup
        );
    }
    Ok(())
}

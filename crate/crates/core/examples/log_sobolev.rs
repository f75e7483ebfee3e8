//! Log-Sobolev gap 2E|D̃F|² − Ent(F²) with its standard error, normalized
//! by E F². A nonnegative gap means the inequality held on the sample.

use pathspace::damped_gradient::{lsi_gap, CylindricalFunction};
use pathspace::geometry::{Drift, Euclidean, Hyperbolic};
use pathspace::stochastic::EnsembleSpec;

fn main() -> pathspace::Result<()> {
    let spec = EnsembleSpec::new(1.0, 32, 4000, 3);
    let flat = Euclidean::flat(1);
    // equality case on flat space: F = exp(θw_T/2 − θ²T/4)
    let tilt = CylindricalFunction::sqrt_gaussian_tilt(0.5, 0, 1.0);
    let e = lsi_gap(&flat, &tilt, &spec)?;
    println!("flat sqrt tilt: gap {:+.2e} ± {:.1e} (lhs {:.4}, rhs {:.4})", e.estimate, e.se, e.lhs, e.rhs);

    let ou = Euclidean::new(2, Drift::Linear { lambda: 0.5 })?;
    let h2 = Hyperbolic::unit(2);
    for idx in 0..4 {
        let f = CylindricalFunction::smooth_battery(idx, 2, vec![0.5, 1.0])?;
        let a = lsi_gap(&ou, &f, &spec)?;
        let b = lsi_gap(&h2, &f, &spec)?;
        println!("F{idx}: ou gap {:+.3e} ± {:.1e}   hyperbolic gap {:+.3e} ± {:.1e}", a.estimate, a.se, b.estimate, b.se);
    }
    Ok(())
}

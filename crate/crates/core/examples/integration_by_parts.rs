//! Monte-Carlo integration by parts: E⟨DF, h̃⟩ = E[F ∫⟨ḣ, dw⟩] where h̃
//! solves the resolvent equation driven by the damped flow.

use pathspace::damped_gradient::{ibp_residual, CylindricalFunction};
use pathspace::geometry::{Drift, Euclidean, Sphere};
use pathspace::stochastic::{CameronMartinPath, EnsembleSpec};
use pathspace::Vector;

fn main() -> pathspace::Result<()> {
    let spec = EnsembleSpec::new(1.0, 32, 4000, 17);
    let h = CameronMartinPath::constant(1.0, 32, Vector::from_vec(vec![1.0, 0.5]));
    let ou = Euclidean::new(2, Drift::Linear { lambda: 0.5 })?;
    let s2 = Sphere::unit(2);
    for idx in 0..3 {
        let f_ou = CylindricalFunction::smooth_battery(idx, 2, vec![0.5, 1.0])?;
        let f_s2 = CylindricalFunction::smooth_battery(idx, 3, vec![0.5, 1.0])?;
        for (name, est) in [("ou", ibp_residual(&ou, &f_ou, &h, &spec)?), ("sphere", ibp_residual(&s2, &f_s2, &h, &spec)?)] {
            println!(
                "{name:<6} F{idx}: lhs {:+.4}  rhs {:+.4}  residual {:+.2e} ± {:.1e}  pass {}",
                est.lhs, est.rhs, est.estimate, est.se, est.pass
            );
        }
    }
    Ok(())
}

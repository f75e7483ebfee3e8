//! The conditional metric A^I on a partition, estimated by kernel regression
//! on the path values at the partition times, and its ellipticity floor.

use pathspace::damped_gradient::{ellipticity_floor, estimate_conditional_metric};
use pathspace::geometry::{Drift, Euclidean, Geometry, Sphere};
use pathspace::stochastic::EnsembleSpec;

fn main() -> pathspace::Result<()> {
    let spec = EnsembleSpec::new(1.0, 20, 20_000, 43);
    let ou = Euclidean::new(2, Drift::Linear { lambda: 0.7 })?;
    for partition in [vec![0.5, 1.0], vec![0.9, 1.0]] {
        let anchor = vec![ou.origin(); partition.len()];
        let m = estimate_conditional_metric(&ou, &partition, &anchor, &spec, None)?;
        let r = ellipticity_floor(&m, 0.7);
        println!(
            "ou {partition:?}: ess {:.0}, lambda_min/floor {:.3} (probe {:.3}), floor {:.4}, pass {}",
            m.effective_samples, r.exact_ratio, r.random_ratio, r.floor, r.pass
        );
    }

    let s2 = Sphere::unit(2);
    let m = estimate_conditional_metric(&s2, &[0.5, 1.0], &[s2.origin(), s2.origin()], &spec.with_paths(4000), Some(0.5))?;
    let lmin = pathspace::linalg::min_sym_eigenvalue(&m.a);
    println!("sphere: reliable {}, ess {:.0}, lambda_min {lmin:.4}", m.reliable, m.effective_samples);
    Ok(())
}

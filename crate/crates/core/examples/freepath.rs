//! Free-path certificate: starts drawn from a Gaussian ν, with the initial
//! constant C₀ = 2 checked first on exponential tilts of ν.

use pathspace::damped_gradient::CylindricalFunction;
use pathspace::geometry::Euclidean;
use pathspace::stochastic::EnsembleSpec;
use pathspace::transport::{
    freepath_certificate, talagrand_certificate, validate_gaussian_constant, InitialLaw, PathMetric, TransportOptions,
};

fn main() -> pathspace::Result<()> {
    let check = validate_gaussian_constant(1.0, 2.0, &[0.5, 1.0, 1.5])?;
    for (theta, w2, bound) in &check.rows {
        println!("theta {theta}: W2^2 {w2:.5}  C0 Ent {bound:.5}");
    }
    println!("worst ratio {:.5}, pass {}", check.worst_ratio, check.pass);

    let flat = Euclidean::flat(1);
    let f = CylindricalFunction::gaussian_tilt(0.5, 0, 1.0);
    let spec = EnsembleSpec::new(1.0, 32, 400, 11);
    let opts = TransportOptions { metric: PathMetric::Endpoint, ..TransportOptions::default() };

    let free = freepath_certificate(&flat, &InitialLaw::Gaussian { std: 1.0 }, 2.0, &f, 0.0, &spec, &opts)?;
    println!("gaussian start: lhs {:.4} rhs {:.4} constant {:.3} pass {}", free.lhs, free.rhs, free.constant, free.pass);

    // a point mass reduces to the fixed-start certificate
    let point = freepath_certificate(&flat, &InitialLaw::PointMass, 2.0, &f, 0.0, &spec, &opts)?;
    let fixed = talagrand_certificate(&flat, &f, 0.0, &spec, &opts)?;
    println!("point mass: lhs {:.4} vs fixed start {:.4}", point.lhs, fixed.lhs);
    Ok(())
}

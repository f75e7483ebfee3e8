//! Coupling by parallel displacement on the hyperbolic plane: the distance
//! stays below ρ₀e^{Kt/2} with K = 1.

use pathspace::experiment::coupling_report;
use pathspace::geometry::{Geometry, Hyperbolic};
use pathspace::stochastic::{parallel_coupling, EnsembleSpec};

fn main() -> pathspace::Result<()> {
    let model = Hyperbolic::new(2, 1.0)?;
    let spec = EnsembleSpec::new(1.0, 1000, 200, 29);

    let o = model.origin();
    let (y0, _) = model.exp_transport(&o, &pathspace::Vector::from_vec(vec![1.0, 0.0]), &[])?;
    let ends: Vec<f64> = spec.map(|i| {
        let noise = spec.noise(2, i).expect("noise");
        let c = parallel_coupling(&model, &noise, &o, &y0).expect("coupling");
        c.distances[spec.steps] / (c.distances[0] * 0.5f64.exp())
    });
    let m = pathspace::parallel::MeanSe::of(&ends);
    let lo = ends.iter().copied().fold(f64::INFINITY, f64::min);
    println!("rho_T / (rho_0 e^(T/2)): mean {:.6} ± {:.1e}, min {:.6}", m.mean, m.se, lo);

    for row in coupling_report(&model, 1.0, &[0.5, 1.0, 2.0], &spec, 0.05)? {
        println!("rho0 {:>4}: max ratio {:.6}  pass {}", row.rho0, row.max_ratio, row.pass);
    }
    Ok(())
}

//! The damped flow dQ/dt = −½(Ric − ∇Z)Q along developed paths, and the
//! exponential norm bound |Q_{t,s}| ≤ e^{K(t−s)/2}.

use pathspace::damped_gradient::solve_damped_flow;
use pathspace::geometry::{Drift, Euclidean, Geometry, Hyperbolic, Sphere};
use pathspace::stochastic::EnsembleSpec;

fn report<G: Geometry>(model: &G, k: f64, spec: &EnsembleSpec) -> pathspace::Result<()> {
    let pairs: Vec<(usize, usize)> = (0..=spec.steps).step_by(10).flat_map(|t| (0..=t).step_by(10).map(move |s| (t, s))).collect();
    let mut ratio = 0.0_f64;
    let mut cocycle = 0.0_f64;
    for i in 0..spec.paths {
        let flow = solve_damped_flow(model, &spec.develop(model, i)?)?;
        ratio = ratio.max(flow.norm_bound_ratio(k, &pairs));
        cocycle = cocycle.max(flow.cocycle_error(&pairs));
    }
    println!("{:<28} K = {k:>4}: max |Q|/bound {ratio:.6}, cocycle error {cocycle:.1e}", model.id());
    Ok(())
}

fn main() -> pathspace::Result<()> {
    let spec = EnsembleSpec::new(1.0, 100, 200, 5);
    report(&Euclidean::new(3, Drift::Linear { lambda: 0.7 })?, -0.7, &spec)?;
    report(&Sphere::unit(2), -1.0, &spec)?;
    report(&Hyperbolic::unit(2), 1.0, &spec)?;
    report(&Hyperbolic::new(3, 1.0)?, 2.0, &spec)?;
    Ok(())
}

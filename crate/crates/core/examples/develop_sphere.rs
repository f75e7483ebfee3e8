//! Brownian motion on the round 2-sphere by stochastic development. The mean
//! of ⟨x_t, x_0⟩ decays like e^{−t}.

use pathspace::geometry::{Geometry, Sphere};
use pathspace::parallel::MeanSe;
use pathspace::stochastic::EnsembleSpec;

fn main() -> pathspace::Result<()> {
    let s2 = Sphere::unit(2);
    let spec = EnsembleSpec::new(1.0, 200, 4000, 7);
    let o = s2.origin();
    let paths = spec.map(|i| spec.develop(&s2, i).expect("develop"));

    for k in [50, 100, 150, 200] {
        let t = k as f64 * spec.dt();
        let dots: Vec<f64> = paths.iter().map(|p| p.points[k].dot(&o)).collect();
        let m = MeanSe::of(&dots);
        println!("t = {t:.2}: E<x_t,o> = {:.4} ± {:.4}  (exact {:.4})", m.mean, m.se, (-t).exp());
    }
    let worst = paths.iter().map(|p| p.max_orthonormality_error(&s2).unwrap()).fold(0.0, f64::max);
    println!("max frame orthonormality error {worst:.2e}");
    Ok(())
}

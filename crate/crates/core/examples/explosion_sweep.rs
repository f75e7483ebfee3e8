//! Explosion of dx = dw + ∇(1+|x|²)^δ dt: no explosion for δ ≤ 1, explosion
//! before T = 1 on almost every path for δ = 2.

use pathspace::experiment::example11_sweep;
use pathspace::stochastic::EnsembleSpec;

fn main() -> pathspace::Result<()> {
    let spec = EnsembleSpec::new(1.0, 200, 1000, 31);
    for r in example11_sweep(2, &[0.5, 1.0, 2.0], &[0.01, 0.05], &spec, 0.1)? {
        print!("delta {:>3}: exploded {:.3} of {}", r.delta, r.explosion_fraction, r.paths);
        for m in &r.moments {
            print!("  E exp({} sup|x|^2) = {:.4} (stable {})", m.lambda, m.full, m.stable);
        }
        println!();
    }
    Ok(())
}

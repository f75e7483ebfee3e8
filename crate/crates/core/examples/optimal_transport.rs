//! Exact transport by the simplex method against the sorted 1-d coupling, and
//! log-domain Sinkhorn converging to it as ε shrinks.

use pathspace::transport::{sinkhorn, sinkhorn_divergence, solve_transport, w2_sorted_1d};
use pathspace::Matrix;
use rand::{Rng, SeedableRng};

fn main() -> pathspace::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    let n = 64;
    let xs: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let ys: Vec<f64> = (0..n).map(|_| rng.random_range(-0.5..1.5)).collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let s: f64 = raw.iter().sum();
    let a: Vec<f64> = raw.iter().map(|w| w / s).collect();
    let b = vec![1.0 / n as f64; n];
    let c = Matrix::from_fn(n, n, |i, j| (xs[i] - ys[j]).powi(2));

    let exact = solve_transport(&a, &b, &c)?;
    println!("simplex W2^2 {:.8} (sorted {:.8}), slackness {:.1e}", exact.plan.cost, w2_sorted_1d(&xs, &a, &ys, &b)?, exact.slackness_residual);

    let cxx = Matrix::from_fn(n, n, |i, j| (xs[i] - xs[j]).powi(2));
    let cyy = Matrix::from_fn(n, n, |i, j| (ys[i] - ys[j]).powi(2));
    for eps in [1e-1, 3e-2, 1e-2] {
        let sk = sinkhorn(&a, &b, &c, eps, 20_000)?;
        let (div, _) = sinkhorn_divergence(&a, &b, &c, &cxx, &cyy, eps, 20_000)?;
        println!(
            "eps {eps:.0e}: <pi,c> {:.6}  divergence {:.6}  sweeps {}  converged {}",
            sk.transport_cost, div, sk.report.iterations, sk.report.converged
        );
    }
    Ok(())
}

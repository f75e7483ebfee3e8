//! Conformal change g′ = f⁻²g of ℝ³ by a Gaussian bump: closed-form
//! Christoffels and Ricci against finite differences, the connection
//! difference bound and the containment bound for fX.

use pathspace::conformal::{
    conformal_connection_diff, conformal_ricci_fd_deviation, containment_ratio, ConformalFactor, GaussianBump, TrigField,
};
use pathspace::geometry::{Drift, Euclidean};
use pathspace::Vector;
use rand::{Rng, SeedableRng};

fn main() -> pathspace::Result<()> {
    let base = Euclidean::new(3, Drift::GradientPower { delta: 0.8 })?;
    let bump = GaussianBump::new(Vector::zeros(3), 1.5, 0.5)?;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
    let points: Vec<Vector> = (0..48).map(|_| Vector::from_fn(3, |_, _| rng.random_range(-1.5..1.5))).collect();
    let fields: Vec<TrigField> = (0..10).map(|i| TrigField::random(3, 3, 100 + i)).collect();
    println!("f ranges over [{:.3}, 1]", points.iter().map(|x| bump.value(x)).fold(1.0, f64::min));

    let conn = conformal_connection_diff(&base, &bump, &fields, &points)?;
    println!("christoffel vs fd: {:.2e}", conn.max_fd_deviation);
    println!("| |∇X| − |∇′X|′ | / 3|∇f||X|′: worst {:.3}", conn.max_bound_ratio);
    println!("ricci vs fd: {:.2e}", conformal_ricci_fd_deviation(&base, &bump, &points)?);
    let contain = fields.iter().map(|fld| containment_ratio(&base, &bump, fld, &points)).collect::<pathspace::Result<Vec<_>>>()?;
    println!("containment: worst {:.3}", contain.iter().copied().fold(0.0, f64::max));
    Ok(())
}

use std::sync::Arc;

use pathspace::damped_gradient::CylindricalFunction;
use pathspace::geometry::{Euclidean, Hyperbolic, Sphere};
use pathspace::linalg::{expm1_over, Matrix};
use pathspace::stochastic::{EnsembleSpec, HorizontalPath};
use pathspace::transport::{
    cost_matrix, relative_entropy, sinkhorn, sinkhorn_divergence, solve_transport, talagrand_certificate,
    validate_gaussian_constant, w2_exact, w2_sinkhorn, w2_sorted_1d, PathMetric, Provenance, TransportOptions,
    WeightedPathEnsemble, ATOM_CAP, SLACKNESS_TOL,
};
use pathspace::Error;
use proptest::prelude::*;

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0..1.0f64, n).prop_map(|v| {
        let v: Vec<f64> = v.iter().map(|x| x + 0.05).collect();
        let s: f64 = v.iter().sum();
        v.iter().map(|x| x / s).collect()
    })
}

fn points(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-3.0..3.0f64, n)
}

fn sq_cost(xs: &[f64], ys: &[f64]) -> Matrix {
    Matrix::from_fn(xs.len(), ys.len(), |i, j| (xs[i] - ys[j]).powi(2))
}

fn flat_paths(n: usize, seed: u64) -> Arc<Vec<HorizontalPath>> {
    let spec = EnsembleSpec::new(1.0, 16, n, seed);
    let m = Euclidean::flat(1);
    Arc::new(spec.map(|i| spec.develop(&m, i).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simplex_matches_monotone_coupling(xs in points(9), a in weights(9), ys in points(7), b in weights(7)) {
        let exact = solve_transport(&a, &b, &sq_cost(&xs, &ys)).unwrap();
        let sorted = w2_sorted_1d(&xs, &a, &ys, &b).unwrap();
        prop_assert!((exact.plan.cost - sorted).abs() <= 1e-10 * (1.0 + sorted));
        prop_assert!(exact.plan.is_feasible(&a, &b, 1e-12));
        prop_assert!(exact.slackness_residual <= SLACKNESS_TOL);
    }

    #[test]
    fn w2_is_symmetric_and_vanishes_on_the_diagonal(xs in points(8), a in weights(8), b in weights(8)) {
        let c = sq_cost(&xs, &xs);
        let ab = solve_transport(&a, &b, &c).unwrap().plan.cost;
        let ba = solve_transport(&b, &a, &c.transpose()).unwrap().plan.cost;
        prop_assert!((ab - ba).abs() <= 1e-12 * (1.0 + ab));
        prop_assert!(solve_transport(&a, &a, &c).unwrap().plan.cost.abs() <= 1e-14);
    }

    #[test]
    fn w1_never_exceeds_w2(xs in points(8), a in weights(8), ys in points(8), b in weights(8)) {
        let d = Matrix::from_fn(8, 8, |i, j| (xs[i] - ys[j]).abs());
        let w1 = solve_transport(&a, &b, &d).unwrap().plan.cost;
        let w2 = solve_transport(&a, &b, &d.map(|x| x * x)).unwrap().plan.cost.sqrt();
        prop_assert!(w1 <= w2 * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn triangle_inequality_for_w2(xs in points(6), a in weights(6), b in weights(6), c in weights(6)) {
        let cost = sq_cost(&xs, &xs);
        let w = |p: &[f64], q: &[f64]| solve_transport(p, q, &cost).unwrap().plan.cost.sqrt();
        prop_assert!(w(&a, &c) <= w(&a, &b) + w(&b, &c) + 1e-10);
    }

    #[test]
    fn sinkhorn_plan_is_feasible(xs in points(12), a in weights(12), ys in points(10), b in weights(10)) {
        // the linear rate degrades like exp(−max c/ε), so keep ε moderate against costs up to 36
        let s = sinkhorn(&a, &b, &sq_cost(&xs, &ys), 0.25, 20_000).unwrap();
        prop_assert!(s.report.converged, "{:?}", s.report);
        prop_assert!(s.plan.is_feasible(&a, &b, 1e-8));
        let exact = solve_transport(&a, &b, &sq_cost(&xs, &ys)).unwrap().plan.cost;
        // the plan is feasible only to the marginal tolerance, times the cost scale
        prop_assert!(s.transport_cost >= exact - 1e-7);
    }

    #[test]
    fn partition_distance_is_dominated_by_the_sup(seed in 0u64..500) {
        let paths = flat_paths(2, seed);
        let m = Euclidean::flat(1);
        let sup = PathMetric::Uniform.distance(&m, &paths[0], &paths[1]).unwrap();
        let part = PathMetric::Partition(vec![4, 8, 16]).distance(&m, &paths[0], &paths[1]).unwrap();
        let coarse = PathMetric::Partition(vec![16]).distance(&m, &paths[0], &paths[1]).unwrap();
        let end = PathMetric::Endpoint.distance(&m, &paths[0], &paths[1]).unwrap();
        prop_assert!(coarse <= part + 1e-15 && part <= sup + 1e-15);
        prop_assert!((coarse - end).abs() <= 1e-15);
    }

    #[test]
    fn certificate_constant_grows_with_k(k1 in 0.0..3.0f64, dk in 0.0..2.0f64, t in 0.1..3.0f64) {
        prop_assert!(expm1_over(k1, t) <= expm1_over(k1 + dk, t) * (1.0 + 1e-14));
        prop_assert!((expm1_over(0.0, t) - t).abs() <= 1e-15 * t);
    }
}

#[test]
fn exact_solver_refuses_above_the_cap() {
    let n = ATOM_CAP + 1;
    let w = vec![1.0 / n as f64; n];
    let err = solve_transport(&w, &w, &Matrix::zeros(n, n)).unwrap_err();
    assert!(matches!(err, Error::AtomCapExceeded { .. }));
}

#[test]
fn unbalanced_weights_are_a_contract_error() {
    let err = solve_transport(&[0.5, 0.5], &[0.7, 0.2], &Matrix::zeros(2, 2)).unwrap_err();
    assert!(matches!(err, Error::Contract(_)));
}

#[test]
fn degenerate_permutation_instances() {
    // many ties: the identity coupling is one of several optima
    let n = 20;
    let w = vec![1.0 / n as f64; n];
    let c = Matrix::from_fn(n, n, |i, j| ((i as f64 - j as f64).abs()).min(3.0));
    let s = solve_transport(&w, &w, &c).unwrap();
    assert!(s.plan.cost.abs() <= 1e-14);
    assert!(s.slackness_residual <= SLACKNESS_TOL);
}

#[test]
fn path_ensembles_and_entropic_divergence() {
    let m = Euclidean::flat(1);
    let paths = flat_paths(40, 3);
    let raw: Vec<f64> = paths.iter().map(|p| (0.5 * p.endpoint()[0]).exp()).collect();
    let mu = WeightedPathEnsemble::uniform(paths.clone(), Provenance::default()).unwrap();
    let nu = WeightedPathEnsemble::reweighted(paths, &raw, Provenance::default()).unwrap();
    let (exact, sol) = w2_exact(&m, &nu, &mu, &PathMetric::Uniform, 1).unwrap();
    assert!(sol.plan.is_feasible(&nu.weights, &mu.weights, 1e-12));
    let ent = w2_sinkhorn(&m, &nu, &mu, &PathMetric::Uniform, 1e-3, 50_000, 1).unwrap();
    assert!((ent.transport_cost - exact).abs() <= 0.02 * exact, "{} vs {exact}", ent.transport_cost);

    let c = cost_matrix(&m, &nu, &mu, &PathMetric::Uniform, 2, 1).unwrap();
    let (div, rep) = sinkhorn_divergence(&nu.weights, &mu.weights, &c, &c, &c, 1e-2, 50_000).unwrap();
    assert!(rep.converged, "{rep:?}");
    assert!((div - exact).abs() <= 0.05 * exact, "{div} vs {exact}");
    let (self_div, _) = sinkhorn_divergence(&mu.weights, &mu.weights, &c, &c, &c, 1e-2, 50_000).unwrap();
    assert!(self_div.abs() <= 1e-9);
}

#[test]
fn cost_matrix_is_worker_independent() {
    let m = Euclidean::flat(1);
    let p = flat_paths(30, 8);
    let mu = WeightedPathEnsemble::uniform(p, Provenance::default()).unwrap();
    let a = cost_matrix(&m, &mu, &mu, &PathMetric::Uniform, 2, 1).unwrap();
    let b = cost_matrix(&m, &mu, &mu, &PathMetric::Uniform, 2, 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn weights_must_sum_to_one() {
    let p = flat_paths(3, 1);
    assert!(WeightedPathEnsemble::new(p.clone(), vec![0.5, 0.5, 0.5], Provenance::default()).is_err());
    assert!(matches!(
        WeightedPathEnsemble::reweighted(p, &[0.0, 0.0, 0.0], Provenance::default()),
        Err(Error::ZeroFunctional)
    ));
}

#[test]
fn relative_entropy_of_a_lognormal_tilt() {
    // F = exp(θZ − θ²/2) with Z ~ N(0,1): Ent = θ²/2
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let theta = 0.6;
    let vals: Vec<f64> = (0..200_000)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            (theta * z - 0.5 * theta * theta).exp()
        })
        .collect();
    let e = relative_entropy(&vals).unwrap();
    assert!((e.estimate - 0.18).abs() <= 3.0 * e.se, "{} ± {}", e.estimate, e.se);
    assert!(relative_entropy(&[1.0, 1.0, 1.0]).unwrap().estimate.abs() <= 1e-15);
    assert!(matches!(relative_entropy(&[0.0, 0.0]), Err(Error::ZeroFunctional)));
}

#[test]
fn constant_functional_certifies_trivially() {
    let spec = EnsembleSpec::new(1.0, 16, 64, 2);
    let f = CylindricalFunction::constant(3.0, 1.0);
    let c = talagrand_certificate(&Sphere::unit(2), &f, 0.0, &spec, &TransportOptions::default()).unwrap();
    assert!(c.pass && c.lhs.abs() <= 1e-12 && c.rhs.abs() <= 1e-12);
}

#[test]
fn negative_curvature_needs_its_constant() {
    let spec = EnsembleSpec::new(1.0, 16, 64, 2);
    let f = CylindricalFunction::smooth_battery(0, 2, vec![1.0]).unwrap();
    let h = Hyperbolic::unit(2);
    let err = talagrand_certificate(&h, &f, 0.5, &spec, &TransportOptions::default()).unwrap_err();
    assert!(matches!(err, Error::CurvatureCheckFailed { .. }));
    let ok = talagrand_certificate(&h, &f, 1.0, &spec, &TransportOptions::default()).unwrap();
    assert!((ok.constant - 2.0 * expm1_over(1.0, 1.0)).abs() <= 1e-12);
}

#[test]
fn gaussian_initial_constant() {
    let check = validate_gaussian_constant(1.0, 2.0, &[0.5, 1.0, 1.5]).unwrap();
    assert!(check.pass, "{}", check.worst_ratio);
    // equality case: W₂² = θ² = 2 Ent for the Gaussian shift
    assert!((check.worst_ratio - 1.0).abs() <= 1e-3);
    assert!(!validate_gaussian_constant(1.0, 1.5, &[1.0]).unwrap().pass);
}

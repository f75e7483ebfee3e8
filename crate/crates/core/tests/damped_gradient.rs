use pathspace::damped_gradient::{
    damped_gradient_of, duality_sides, ellipticity_floor, estimate_conditional_metric, lsi_gap, resolvent_shift,
    solve_damped_flow, CylindricalFunction, DampedFlow, FD_GRADIENT_STEP,
};
use pathspace::geometry::{Drift, Euclidean, Geometry, Hyperbolic, Sphere};
use pathspace::linalg::Matrix;
use pathspace::stochastic::{derivative_flow, develop_path, CameronMartinPath, EnsembleSpec};
use pathspace::{Error, Frame, Vector};
use proptest::prelude::*;

fn wiggly_h(steps: usize, dim: usize, phase: f64) -> CameronMartinPath {
    let dt = 1.0 / steps as f64;
    let hdot = (0..steps)
        .map(|k| Vector::from_fn(dim, |i, _| (3.0 * k as f64 * dt + phase + i as f64).cos()))
        .collect();
    CameronMartinPath::from_derivative(dt, hdot).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cocycle_and_duality_hold_pathwise(seed in 0u64..10_000, phase in 0.0..6.0f64, idx in 0u64..20) {
        let spec = EnsembleSpec::new(1.0, 40, 1, seed);
        let m = Hyperbolic::unit(2);
        let p = spec.develop(&m, 0).unwrap();
        let flow = solve_damped_flow(&m, &p).unwrap();
        let pairs: Vec<(usize, usize)> = (0..=40).step_by(5).flat_map(|t| (0..=t).step_by(5).map(move |s| (t, s))).collect();
        prop_assert!(flow.cocycle_error(&pairs) <= 1e-12 * flow.q[40].norm());
        let f = CylindricalFunction::smooth_battery(idx, 2, vec![0.3, 0.7, 1.0]).unwrap();
        let g = damped_gradient_of(&f, &p, &flow).unwrap();
        let (lhs, rhs) = duality_sides(&g, &flow, &wiggly_h(40, 2, phase)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn closed_form_gradients_match_finite_differences(idx in 0u64..50, x in proptest::collection::vec(-2.0..2.0f64, 6)) {
        let f = CylindricalFunction::smooth_battery(idx, 3, vec![0.5, 1.0]).unwrap();
        let pts = vec![Vector::from_column_slice(&x[..3]), Vector::from_column_slice(&x[3..])];
        let exact = f.gradient_at(&pts).unwrap();
        let fd = f.fd_gradient(&pts);
        for (a, b) in exact.iter().zip(&fd) {
            prop_assert!((a - b).norm() <= 1e3 * FD_GRADIENT_STEP * FD_GRADIENT_STEP);
        }
        let v = f.value_at(&pts);
        prop_assert!((0.5..=2.5).contains(&v));
    }
}

#[test]
fn resolvent_shift_closed_form_for_ou() {
    // h̃' + ½λh̃ = ḣ with ḣ = e₁ gives h̃(t) = (2/λ)(1 − e^{−λt/2}) e₁
    let lambda = 0.8;
    let m = Euclidean::new(2, Drift::Linear { lambda }).unwrap();
    let spec = EnsembleSpec::new(1.0, 200, 1, 1);
    let flow = solve_damped_flow(&m, &spec.develop(&m, 0).unwrap()).unwrap();
    let h = CameronMartinPath::constant(1.0, 200, Vector::from_vec(vec![1.0, 0.0]));
    let vals = resolvent_shift(&h, &flow).unwrap().values();
    for (k, v) in vals.iter().enumerate() {
        let t = k as f64 / 200.0;
        assert!((v[0] - 2.0 / lambda * (1.0 - (-0.5 * lambda * t).exp())).abs() <= 1e-10);
        assert!(v[1].abs() <= 1e-15);
    }
}

#[test]
fn flat_damped_gradient_is_the_plain_gradient() {
    let m = Euclidean::flat(2);
    let spec = EnsembleSpec::new(2.0, 64, 1, 3);
    let p = spec.develop(&m, 0).unwrap();
    let flow = solve_damped_flow(&m, &p).unwrap();
    let a = Vector::from_vec(vec![0.6, -0.8]);
    let f = CylindricalFunction::linear(a.clone(), 1.0);
    let g = damped_gradient_of(&f, &p, &flow).unwrap();
    // D_sF = a 1_{s ≤ 1}, so ∫|D_sF|² = |a|²·1
    assert!((g.energy() - 1.0).abs() <= 1e-12);
    assert!((g.energy() - g.plain_energy()).abs() <= 1e-12);
}

#[test]
fn damped_flow_constant_generator() {
    let a = Matrix::from_row_slice(2, 2, &[1.0, 0.3, -0.3, 0.5]);
    let flow = DampedFlow::from_generators(0.01, vec![a.clone(); 101]).unwrap();
    // Q_t = exp(−½At); compare against nalgebra's matrix exponential
    let exact = (a * -0.5).exp();
    assert!((&flow.q[100] - exact).abs().max() <= 1e-10);
}

#[test]
fn derivative_flow_matches_shifted_noise() {
    let spec = EnsembleSpec::new(1.0, 200, 1, 11);
    let eps = 1e-5;
    let cases: Vec<(Box<dyn Geometry>, f64)> = vec![
        (Box::new(Euclidean::new(2, Drift::GradientPower { delta: 0.6 }).unwrap()), 1e-7),
        (Box::new(Euclidean::new(2, Drift::Spiral { lambda: 0.4, omega: 1.5 }).unwrap()), 1e-7),
        (Box::new(Sphere::unit(2).chart()), 0.05),
        (Box::new(Hyperbolic::unit(2)), 0.05),
    ];
    for (m, tol) in &cases {
        let m = m.as_ref();
        let noise = spec.noise(2, 0).unwrap();
        let u0 = Frame::at_origin(m).unwrap();
        let h = wiggly_h(200, 2, 0.3);
        let (p, df) = derivative_flow(m, &noise, &u0, &h).unwrap();
        let plus = develop_path(m, &noise.shifted(&h, eps).unwrap(), &u0).unwrap();
        let minus = develop_path(m, &noise.shifted(&h, -eps).unwrap(), &u0).unwrap();
        let fd = (plus.endpoint() - minus.endpoint()) / (2.0 * eps);
        let an = df.tangent(&p, 200);
        assert!((&an - &fd).norm() <= tol * (1.0 + fd.norm()), "{}: {an} vs {fd}", m.id());
    }
}

#[test]
fn derivative_flow_refuses_variable_curvature() {
    let m = pathspace::conformal::ConformalModel::new(
        Euclidean::flat(2),
        std::sync::Arc::new(pathspace::conformal::GaussianBump::new(Vector::zeros(2), 1.0, 0.5).unwrap()),
    )
    .unwrap();
    let spec = EnsembleSpec::new(1.0, 16, 1, 1);
    let r = derivative_flow(&m, &spec.noise(2, 0).unwrap(), &Frame::at_origin(&m).unwrap(), &wiggly_h(16, 2, 0.0));
    assert!(matches!(r, Err(Error::Unsupported(_))));
}

#[test]
fn constant_functional_has_no_entropy_gap() {
    let est = lsi_gap(&Sphere::unit(2), &CylindricalFunction::constant(2.0, 1.0), &EnsembleSpec::new(1.0, 16, 100, 1)).unwrap();
    assert!(est.estimate.abs() <= 1e-12 && est.lhs.abs() <= 1e-12);
}

#[test]
fn ellipticity_floor_depends_on_the_first_block() {
    let ou = Euclidean::new(2, Drift::Linear { lambda: 0.7 }).unwrap();
    let spec = EnsembleSpec::new(1.0, 20, 20_000, 43);
    let coarse = estimate_conditional_metric(&ou, &[0.5, 1.0], &[ou.origin(), ou.origin()], &spec, None).unwrap();
    let fine = estimate_conditional_metric(&ou, &[0.9, 1.0], &[ou.origin(), ou.origin()], &spec, None).unwrap();
    let rc = ellipticity_floor(&coarse, 0.7);
    let rf = ellipticity_floor(&fine, 0.7);
    assert!(rc.pass, "{rc:?}");
    assert!(rf.pass, "{rf:?}");
    // a shorter last gap lowers the floor
    assert!(rf.floor < rc.floor);
    // a short first block breaks the floor: a = (a₁, 0) only collects ∫₀^{s₁}
    let short = estimate_conditional_metric(&ou, &[0.1, 1.0], &[ou.origin(), ou.origin()], &spec, None).unwrap();
    let rs = ellipticity_floor(&short, 0.7);
    assert!(!rs.pass && rs.exact_ratio < 0.6, "{rs:?}");
}

#[test]
fn conditional_metric_is_symmetric_and_positive() {
    let s2 = Sphere::unit(2);
    let spec = EnsembleSpec::new(1.0, 20, 3000, 9);
    let m = estimate_conditional_metric(&s2, &[0.5, 1.0], &[s2.origin(), s2.origin()], &spec, Some(0.5)).unwrap();
    assert_eq!(m.a, m.a.transpose());
    assert!(pathspace::linalg::min_sym_eigenvalue(&m.a) > 0.0);
    assert!(m.reliable && m.effective_samples >= 30.0);
}

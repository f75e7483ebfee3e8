use approx::assert_abs_diff_eq;
use pathspace::geometry::{
    fd_christoffel, fd_ricci, verify_curvature_bound, Drift, Euclidean, Geometry, Hyperbolic, Sphere,
};
use pathspace::linalg::{inner_g, norm_g, orthonormality_error};
use pathspace::stochastic::{develop_path, DrivingNoise, EnsembleSpec};
use pathspace::{Frame, Vector};
use proptest::prelude::*;

fn vec_in(dim: usize, r: f64) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(-r..r, dim).prop_map(Vector::from_vec)
}

fn poincare_distance(c: f64, x: &Vector, y: &Vector) -> f64 {
    let num = 2.0 * c * (x - y).norm_squared();
    let den = (1.0 - c * x.norm_squared()) * (1.0 - c * y.norm_squared());
    (1.0 + num / den).acosh() / c.sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hyperbolic_distance_matches_arcosh(x in vec_in(3, 0.5), y in vec_in(3, 0.5), c in 0.5..2.0f64) {
        let m = Hyperbolic::new(3, c).unwrap();
        let (x, y) = (x * 0.9 / c.sqrt(), y * 0.9 / c.sqrt());
        let d = m.distance(&x, &y).unwrap();
        prop_assert!((d - poincare_distance(c, &x, &y)).abs() <= 1e-9 * (1.0 + d));
        prop_assert!((d - m.distance(&y, &x).unwrap()).abs() <= 1e-12 * (1.0 + d));
    }

    #[test]
    fn hyperbolic_exp_log_round_trip(x in vec_in(2, 0.5), v in vec_in(2, 1.5), w in vec_in(2, 1.0)) {
        let m = Hyperbolic::unit(2);
        let (y, tw) = m.exp_transport(&x, &v, std::slice::from_ref(&w)).unwrap();
        let back = m.log(&x, &y).unwrap();
        prop_assert!((&back - &v).norm() <= 1e-7 * (1.0 + v.norm()));
        let gx = m.metric(&x).unwrap();
        let gy = m.metric(&y).unwrap();
        prop_assert!((m.distance(&x, &y).unwrap() - norm_g(&gx, &v)).abs() <= 1e-9 * (1.0 + norm_g(&gx, &v)));
        // transport is an isometry
        prop_assert!((inner_g(&gy, &tw[0], &tw[0]) - inner_g(&gx, &w, &w)).abs() <= 1e-9 * (1.0 + inner_g(&gx, &w, &w)));
    }

    #[test]
    fn sphere_exp_stays_on_sphere(raw in vec_in(3, 1.0), v in vec_in(3, 1.0), r in 0.5..3.0f64) {
        let s = Sphere::new(2, r).unwrap();
        prop_assume!(raw.norm() > 1e-3);
        let x = &raw * (r / raw.norm());
        let v = s.project_tangent(&x, &v);
        let (y, tv) = s.exp_transport(&x, &v, std::slice::from_ref(&v)).unwrap();
        prop_assert!(s.in_domain(&y));
        prop_assert!((tv[0].norm() - v.norm()).abs() <= 1e-10 * (1.0 + v.norm()));
        prop_assert!(y.dot(&tv[0]).abs() <= 1e-9 * r * (1.0 + v.norm()));
        if v.norm() < std::f64::consts::PI * r * 0.95 {
            prop_assert!((s.distance(&x, &y).unwrap() - v.norm()).abs() <= 1e-9 * r);
        }
    }

    #[test]
    fn developed_frames_stay_orthonormal(seed in 0u64..1000, which in 0usize..4) {
        let spec = EnsembleSpec::new(1.0, 50, 1, seed);
        let err = match which {
            0 => spec.develop(&Sphere::unit(2), 0).unwrap().max_orthonormality_error(&Sphere::unit(2)).unwrap(),
            1 => spec.develop(&Hyperbolic::unit(2), 0).unwrap().max_orthonormality_error(&Hyperbolic::unit(2)).unwrap(),
            2 => {
                let chart = Sphere::unit(2).chart();
                spec.develop(&chart, 0).unwrap().max_orthonormality_error(&chart).unwrap()
            }
            _ => {
                let m = Euclidean::new(3, Drift::Spiral { lambda: 0.3, omega: 2.0 }).unwrap();
                spec.develop(&m, 0).unwrap().max_orthonormality_error(&m).unwrap()
            }
        };
        prop_assert!(err <= 1e-8);
    }

    #[test]
    fn distance_triangle_inequality(a in vec_in(2, 0.6), b in vec_in(2, 0.6), c in vec_in(2, 0.6)) {
        let m = Hyperbolic::unit(2);
        let d = |p: &Vector, q: &Vector| m.distance(p, q).unwrap();
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-9);
    }
}

#[test]
fn poincare_origin_metric_scale() {
    let m = Hyperbolic::unit(2);
    let g = m.metric(&m.origin()).unwrap();
    assert_abs_diff_eq!(norm_g(&g, &Vector::from_vec(vec![1.0, 0.0])), 2.0, epsilon = 1e-15);
}

#[test]
fn flat_development_is_the_driving_noise() {
    let noise = DrivingNoise::generate(1.0, 100, 3, 5, 0).unwrap();
    let m = Euclidean::flat(3);
    let p = develop_path(&m, &noise, &Frame::at_origin(&m).unwrap()).unwrap();
    assert!((p.endpoint() - noise.endpoint()).norm() <= 1e-12);
}

#[test]
fn chart_christoffel_and_ricci_match_finite_differences() {
    let chart: &dyn Geometry = &Sphere::new(2, 1.5).unwrap().chart();
    let hyp: &dyn Geometry = &Hyperbolic::new(3, 0.7).unwrap();
    for (m, x) in [
        (chart, Vector::from_vec(vec![0.3, -0.2])),
        (hyp, Vector::from_vec(vec![0.2, 0.1, -0.3])),
    ] {
        let exact = m.christoffel(&x).unwrap();
        let fd = fd_christoffel(|y| m.metric(y), &x, 1e-5).unwrap();
        assert!(exact.max_abs_diff(&fd) <= 1e-8, "{}", m.id());
        let ric_fd = fd_ricci(|y| m.christoffel(y), &x, 1e-4).unwrap();
        assert!((m.ricci(&x).unwrap() - ric_fd).abs().max() <= 1e-6, "{}", m.id());
    }
}

#[test]
fn einstein_constants() {
    let s = Sphere::new(3, 2.0).unwrap();
    let x = s.origin();
    assert_abs_diff_eq!(s.ricci(&x).unwrap()[(0, 0)], 2.0 / 4.0, epsilon = 1e-14);
    let h = Hyperbolic::new(3, 0.5).unwrap();
    let y = Vector::from_vec(vec![0.3, 0.2, 0.1]);
    let ratio = h.ricci(&y).unwrap() - h.metric(&y).unwrap() * (-(2.0 * 0.5));
    assert!(ratio.abs().max() <= 1e-12);
}

#[test]
fn curvature_check_uses_the_sharp_constant() {
    let h = Hyperbolic::unit(3);
    let pts = vec![h.origin(), Vector::from_vec(vec![0.5, 0.1, 0.0])];
    assert!(verify_curvature_bound(&h, &pts, 2.0).unwrap().pass);
    assert!(!verify_curvature_bound(&h, &pts, 1.9).unwrap().pass);
    let ou = Euclidean::new(2, Drift::Linear { lambda: -0.4 }).unwrap();
    let r = verify_curvature_bound(&ou, &[ou.origin()], 0.0).unwrap();
    assert!(!r.pass);
    assert_abs_diff_eq!(r.min_eigenvalue, -0.4, epsilon = 1e-12);
}

#[test]
fn frame_rejects_non_orthonormal() {
    let m = Hyperbolic::unit(2);
    let x = Vector::from_vec(vec![0.3, 0.0]);
    let e = pathspace::Matrix::identity(2, 2);
    assert!(Frame::new(&m, x.clone(), e).is_err());
    let c = Frame::canonical(&m, x).unwrap();
    assert!(orthonormality_error(&m.metric(&c.base).unwrap(), &c.e) <= 1e-14);
}

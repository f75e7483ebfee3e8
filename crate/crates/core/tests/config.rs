use std::path::Path;

use pathspace::conformal::{h0, smoothstep5, ConformalFactor, CutoffChain, Envelope};
use pathspace::experiment::ExperimentConfig;
use pathspace::{Error, Vector};
use proptest::prelude::*;

fn bundled() -> Vec<(String, ExperimentConfig)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), ExperimentConfig::load(&p).unwrap()))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn bundled_configs_round_trip() {
    let all = bundled();
    assert!(all.len() >= 10);
    for (name, cfg) in all {
        let back = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(back, cfg, "{name}");
        cfg.validate().unwrap();
    }
}

#[test]
fn validation_names_the_field() {
    let base = "T = 1.0\nn_steps = 32\nn_paths = 64\nseed = 1\n[model]\nkind = \"sphere\"\ndim = 2\n";
    let field = |text: &str| match ExperimentConfig::from_toml(text).and_then(|c| c.validate()) {
        Err(Error::Config { path, .. }) => path,
        other => panic!("{other:?}"),
    };
    assert_eq!(field(&base.replace("T = 1.0", "T = -1.0")), "T");
    assert_eq!(field(&base.replace("n_steps = 32", "n_steps = 4")), "n_steps");
    assert_eq!(field(&base.replace("seed = 1\n", "")), "seed");
    assert_eq!(field(&format!("partition = [0.5, 0.2]\n{base}")), "partition");
    assert_eq!(field(&format!("k = -1.0\n{base}")), "k");
}

#[test]
fn envelope_rejects_integrable_growth() {
    assert!(Envelope::Power { a: 1.0, b: 1.0, p: 1.5 }.validate().is_err());
    assert!(Envelope::Constant { a: 0.0 }.validate().is_err());
    assert!(CutoffChain::new(Envelope::Constant { a: 1.0 }, 2).unwrap().member(1.0).is_err());
}

#[test]
fn smoothstep_endpoints() {
    assert_eq!(smoothstep5(0.0), (0.0, 0.0, 0.0));
    assert_eq!(smoothstep5(1.0), (1.0, 0.0, 0.0));
    let (v, d1, _) = smoothstep5(0.5);
    assert!((v - 0.5).abs() <= 1e-15 && (d1 - 1.875).abs() <= 1e-14);
    assert_eq!(h0(0.5).0, 1.0);
    assert_eq!(h0(2.5).0, 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cutoff_profile_is_monotone_and_bounded(b in 0.0..2.0f64, p in 0.2..1.0f64, n in 2.0..10.0f64) {
        let chain = CutoffChain::new(Envelope::Power { a: 1.0, b, p }, 2).unwrap();
        let m = chain.member(n).unwrap();
        let bigger = chain.member(2.0 * n).unwrap();
        prop_assert!(bigger.support_radius_rho() >= m.support_radius_rho());
        prop_assert!(m.plateau_radius_rho() <= m.support_radius_rho());
        let r = m.support_radius_rho() * 1.1 + 1.0;
        let mut prev = 1.0;
        for i in 0..=200 {
            let x = Vector::from_vec(vec![r * i as f64 / 200.0, 0.0]);
            let v = m.value(&x);
            prop_assert!((0.0..=1.0).contains(&v));
            prop_assert!(v <= prev + 1e-12);
            prev = v;
        }
        prop_assert_eq!(prev, 0.0);
    }
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pathspace::experiment::COLUMNS;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathspace"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pathspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_config(name: &str, text: &str) -> PathBuf {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

const SMALL_TALAGRAND: &str = r#"
T = 1.0
n_steps = 16
n_paths = 64
seed = 9

[model]
kind = "euclidean"
dim = 2

[functional]
kind = "constant"
value = 1.0
"#;

#[test]
fn header_matches_report_columns() {
    let cfg = write_config("header.toml", SMALL_TALAGRAND);
    let out = run(&["talagrand", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, COLUMNS.join(","));
    assert_eq!(
        header,
        "experiment,model,params,lhs,rhs,constant,se,control,ratio,pass,wall_time,exclusion_fraction"
    );
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn out_flag_writes_csv_and_plot_stub() {
    let cfg = write_config("out.toml", SMALL_TALAGRAND);
    let csv = scratch("out.csv");
    let out = run(&["talagrand", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap(), "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("experiment,model,params"));
    let gp = std::fs::read_to_string(csv.with_extension("gp")).unwrap();
    assert!(gp.contains("out.csv"));
}

#[test]
fn seed_flag_overrides_config() {
    let cfg = write_config("seed.toml", SMALL_TALAGRAND);
    let c = cfg.to_str().unwrap();
    let base = run(&["talagrand", "--config", c]).stdout;
    let same = run(&["talagrand", "--config", c, "--seed", "9"]).stdout;
    let other = run(&["talagrand", "--config", c, "--seed", "10"]).stdout;
    assert_eq!(base, same);
    assert_ne!(base, other);
    assert!(String::from_utf8(other).unwrap().contains("seed=10"));
}

#[test]
fn failing_certificate_exits_one() {
    // the full-path Girsanov certificate at 512 atoms does not pass
    let out = run(&["talagrand", "--config", config("talagrand.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains(",false,"));
}

#[test]
fn refused_curvature_exits_one() {
    let cfg = write_config(
        "refuse.toml",
        r#"
T = 1.0
n_steps = 16
n_paths = 64
seed = 1
k = 0.0

[model]
kind = "hyperbolic"
dim = 2

[functional]
kind = "battery"
index = 0
times = [1.0]
"#,
    );
    let out = run(&["talagrand", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("curvature"));
}

#[test]
fn config_errors_exit_two() {
    let unknown = write_config("unknown.toml", &format!("{SMALL_TALAGRAND}\nbogus = 1\n"));
    let out = run(&["talagrand", "--config", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));

    let few = write_config("few.toml", &SMALL_TALAGRAND.replace("n_paths = 64", "n_paths = 8"));
    let out = run(&["talagrand", "--config", few.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n_paths"));

    let missing = scratch("does-not-exist.toml");
    assert_eq!(run(&["lsi", "--config", missing.to_str().unwrap()]).status.code(), Some(2));

    // talagrand config run as coupling: no [coupling] section
    let out = run(&["coupling", "--config", config("talagrand-constant.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deep_field_errors_name_the_path() {
    let bad = write_config(
        "deep.toml",
        &SMALL_TALAGRAND.replace("kind = \"euclidean\"\ndim = 2", "kind = \"euclidean\"\ndim = 2\ndrift = { kind = \"ou\", lamda = 1.0 }"),
    );
    let out = run(&["talagrand", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    // tagged enums report the enclosing table plus the offending key
    assert!(err.contains("`model`") && err.contains("lamda"), "{err}");
}

#[test]
fn vanishing_functional_exits_three() {
    let cfg = write_config("zero.toml", &SMALL_TALAGRAND.replace("value = 1.0", "value = 0.0"));
    let out = run(&["talagrand", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unknown_subcommand_is_rejected() {
    let cfg = write_config("sub.toml", SMALL_TALAGRAND);
    let out = run(&["wasserstein", "--config", cfg.to_str().unwrap()]);
    assert!(!out.status.success());
}

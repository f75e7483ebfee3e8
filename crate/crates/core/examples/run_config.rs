//! Runs a config file through the experiment driver and prints the CSV.
//!
//! cargo run --release --example run_config -- configs/talagrand.toml

use pathspace::experiment::{run_experiment, to_csv_string, ExperimentConfig};

fn main() -> pathspace::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "configs/talagrand-constant.toml".into());
    let cfg = ExperimentConfig::load(path.as_ref())?;
    let rows = run_experiment(&cfg, None, 0)?;
    print!("{}", to_csv_string(&rows)?);
    Ok(())
}

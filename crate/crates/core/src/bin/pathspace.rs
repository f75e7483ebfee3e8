use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pathspace::experiment::{exit_code, run_experiment, write_csv, write_csv_file, write_gnuplot_stub, ExperimentConfig, ExperimentKind};

/// Run one experiment from a TOML config and write its CSV report.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// Experiment kind.
    #[arg(value_enum)]
    experiment: ExperimentKind,
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; defaults to the config's `output`, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match ExperimentConfig::load(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = Some(s);
    }
    let rows = match run_experiment(&cfg, Some(cli.experiment), cli.workers) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match cli.out.or(cfg.output.clone()) {
        Some(path) => write_csv_file(&rows, &path).and_then(|_| write_gnuplot_stub(&path)).map(|_| ()),
        None => write_csv(&rows, std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(exit_code(&e) as u8);
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        eprintln!("{failed} of {} rows failed", rows.len());
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use bsq_lab::config::{Config, Experiment, PrecisionChoice};
use bsq_lab::error::LabResult;
use bsq_lab::experiments::{run_experiment, RunParams};

/// Numerical laboratory for the Boussinesq propagator: run one experiment
/// and emit CSV tables, a JSON manifest, and a plain-text summary.
#[derive(Parser)]
#[command(name = "bsq-lab", version, about, long_about = None)]
struct Cli {
    /// Experiment to run: convergence, counterexample, kernel-decay, vdc,
    /// measure-maximal, lower-bound, bessel, radial-sharpness
    experiment: String,

    /// Optional `key = value` configuration file; defaults apply otherwise
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory for the emitted artifacts
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Seed for all randomized instances
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker thread count (artifacts are identical for any value)
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// Phase-assembly precision: double or extended
    #[arg(long, default_value = "extended")]
    precision: String,
}

fn run(cli: &Cli) -> LabResult<bool> {
    let experiment = Experiment::ALL
        .iter()
        .copied()
        .find(|e| e.name() == cli.experiment)
        .ok_or_else(|| {
            let known = Experiment::ALL.map(|e| e.name()).join(", ");
            bsq_lab::error::LabError::Config(format!(
                "unknown experiment `{}` (known: {known})",
                cli.experiment
            ))
        })?;
    let precision = match cli.precision.as_str() {
        "double" => PrecisionChoice::Double,
        "extended" => PrecisionChoice::Extended,
        other => {
            return Err(bsq_lab::error::LabError::Config(format!(
                "unknown precision `{other}` (known: double, extended)"
            )))
        }
    };
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let report = run_experiment(
        experiment,
        &config,
        RunParams {
            seed: cli.seed,
            threads: cli.threads,
            precision,
        },
    )?;
    let files = report.emit(&cli.out)?;
    print!("{}", report.summary_text());
    for f in &files {
        println!("wrote {}", f.display());
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

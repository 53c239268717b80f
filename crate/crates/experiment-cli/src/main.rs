use clap::Parser;
use experiment_cli::{experiments, Overrides, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

/// Batch experiments for digitized quantum-annealing schedules on the
/// transverse-field Ising chain.
///
/// Exit codes: 0 success, 1 validation failure, 2 config error.
#[derive(Parser)]
#[command(name = "dqa", version, about)]
struct Cli {
    /// Experiment to run: bound-scan, regular, degeneracy,
    /// compare-schedules, collapse, field-scan, validate.
    #[arg(long)]
    experiment: Option<String>,

    /// INI-style config file with [run] and [params] sections.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Seed for stochastic experiments (overrides the config).
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory (overrides config and the DQA_OUT variable).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads. Wall time only: results are identical for any
    /// value, and it is excluded from the config hash.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        experiment: cli.experiment,
        seed: cli.seed,
        out: cli.out,
        threads: cli.threads,
    };
    let cfg = match RunConfig::load(cli.config.as_deref(), &overrides) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("config error: {err}");
            return ExitCode::from(2);
        }
    };

    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    eprintln!(
        "[t={started}] experiment={} seed={} hash={} out={}",
        cfg.experiment.name(),
        cfg.seed,
        cfg.hash(),
        cfg.out_dir.display()
    );

    match experiments::run(&cfg) {
        Ok(outcome) => {
            for file in &outcome.files {
                eprintln!("wrote {}", file.display());
            }
            match outcome.validation_passed {
                Some(false) => {
                    eprintln!("validation FAILED");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(err) => {
            eprintln!("run failed: {err}");
            ExitCode::from(1)
        }
    }
}

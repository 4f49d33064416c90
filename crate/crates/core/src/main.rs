use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fracbandit::config::load_config;
use fracbandit::report::{bounds_report, bounds_rows, write_metrics_csv, BoundsParams, TableFormat};
use fracbandit::sim::{run_experiment, Execution};

#[derive(Parser)]
#[command(version, about = "Fractional-moment bandit testbed")]
struct Cli {
    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write DIR/metrics.csv.
    Run {
        /// TOML experiment file.
        #[arg(long)]
        config: PathBuf,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override n_tasks.
        #[arg(long)]
        tasks: Option<usize>,
        /// Override the horizon.
        #[arg(long)]
        plays: Option<usize>,
        /// Run on the calling thread only.
        #[arg(long)]
        serial: bool,
    },
    /// Print n ln n, g(n), n g(n) and optional per-arm sample sizes.
    Bounds {
        /// Comma-separated arm counts, each >= 2.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        /// With --delta, adds the beta = 1 binary-reward pulls per arm.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// With --delta, adds the dependent-sample pulls per arm.
        #[arg(long)]
        mu_t: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            out,
            seed,
            tasks,
            plays,
            serial,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(t) = tasks {
                cfg.n_tasks = t;
            }
            if let Some(p) = plays {
                cfg.horizon = p;
            }
            if cli.verbose {
                eprintln!(
                    "{} policies, {} tasks, {} plays, {} arms, seed {}",
                    cfg.policies.len(),
                    cfg.n_tasks,
                    cfg.horizon,
                    cfg.n_arms(),
                    cfg.master_seed
                );
            }
            let exec = if serial { Execution::Serial } else { Execution::Parallel };
            let metrics = run_experiment(&cfg, exec)?;
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let path = out.join("metrics.csv");
            write_metrics_csv(&metrics, &path)?;
            if cli.verbose {
                for m in &metrics {
                    eprintln!(
                        "{}: final regret {:.3}, optimal {:.3}",
                        m.label,
                        m.final_cum_regret(),
                        m.final_pct_optimal()
                    );
                }
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Bounds {
            n,
            eps,
            delta,
            mu_t,
            format,
        } => {
            let rows = bounds_rows(&n, BoundsParams { eps, delta, mu_t })?;
            let format = match format {
                Format::Text => TableFormat::Text,
                Format::Csv => TableFormat::Csv,
            };
            print!("{}", bounds_report(&rows, format));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

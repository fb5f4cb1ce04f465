use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use abslocal::app::{
    analyze_file, exit, render_analysis, render_ensemble, render_oracle, render_sweep_csv,
    run_ensemble, run_oracle, run_sweep, OutputFormat, RunConfig, SweepFamily,
};
use abslocal::criteria::DEFAULT_EPSILON;

/// Absolute Bell-CHSH locality of two-qubit states.
#[derive(Parser)]
#[command(name = "abslocal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a state file (JSON with a "matrix" or "bloch" key).
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Grid points per angle for the torus searches.
        #[arg(long, default_value_t = 24)]
        grid: usize,
    },
    /// Sweep a state family over [0, 1] and locate its threshold.
    Sweep {
        #[arg(value_enum)]
        family: SweepFamily,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Mixing angle for the gisin and rho_g families.
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Randomized check that no global unitary lifts M above F.
    Oracle {
        #[arg(long, default_value_t = 50)]
        states: usize,
        #[arg(long, default_value_t = 2000)]
        unitaries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw Bell-diagonal states instead of Hilbert-Schmidt states.
        #[arg(long)]
        bell_diagonal: bool,
        /// Skip the local refinement after sampling.
        #[arg(long)]
        no_refine: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Monte Carlo fractions over the Hilbert-Schmidt ensemble.
    Ensemble {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ABSLOCAL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("ABSLOCAL_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> abslocal::Result<(String, i32)> {
    match cli.command {
        Command::Analyze {
            file,
            epsilon,
            format,
            grid,
        } => {
            let config = RunConfig {
                epsilon,
                grid,
                format,
                ..RunConfig::default()
            }
            .validate()?;
            let report = analyze_file(&file, &config)?;
            Ok((render_analysis(&report, format), report.exit_code()))
        }
        Command::Sweep {
            family,
            steps,
            theta,
            epsilon,
            format,
        } => {
            RunConfig {
                epsilon,
                ..RunConfig::default()
            }
            .validate()?;
            let table = run_sweep(family, steps, theta, epsilon)?;
            let out = match format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&table).expect("table serializes") + "\n"
                }
                OutputFormat::Csv | OutputFormat::Table => render_sweep_csv(&table),
            };
            Ok((out, 0))
        }
        Command::Oracle {
            states,
            unitaries,
            seed,
            bell_diagonal,
            no_refine,
            format,
        } => {
            RunConfig {
                samples: states.min(unitaries),
                seed,
                ..RunConfig::default()
            }
            .validate()?;
            let summary = run_oracle(states, unitaries, seed, bell_diagonal, !no_refine);
            Ok((render_oracle(&summary, format), summary.exit_code()))
        }
        Command::Ensemble {
            samples,
            seed,
            format,
        } => {
            RunConfig {
                samples,
                seed,
                ..RunConfig::default()
            }
            .validate()?;
            let summary = run_ensemble(samples, seed);
            Ok((render_ensemble(&summary, format), summary.exit_code()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(exit::USAGE as u8);
    }
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::for_error(&e) as u8)
        }
    }
}

//! `lp-lab`: synthesis, fitting, construction and experiments from the command line.
//!
//! Signals are CSV files with one value per line. Commands other than `synth`
//! write a JSON [`report::ReportDocument`] to stdout or `--output`.

// `!(a <= b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lpkit::lsq::FitMethod;
use lpkit::{Execution, Signal};

use commands::{ConstructMethod, ExperimentConfig, ExperimentKind};
use error::{CliError, Result};
use input::{parse_signal, KeyValues};

#[derive(Debug, Parser)]
#[command(
    name = "lp-lab",
    version,
    about = "Linear prediction models from interpolation bases"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a signal from bases and weights, or from a recurrence.
    Synth {
        /// Spec file: `bases`/`weights` tuples, or `a`/`initial` lists.
        #[arg(long)]
        input: PathBuf,
        /// Number of samples to write.
        #[arg(long)]
        count: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Least-squares fit of an LP model and its interpolation bases.
    Fit {
        /// Signal CSV.
        #[arg(long)]
        input: PathBuf,
        #[arg(short = 'p', long = "order")]
        order: usize,
        #[arg(long, value_enum, default_value_t = FitArg::Covariance)]
        method: FitArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build an LP model from DCT-1 bases or the difference operator.
    Construct {
        /// Signal CSV.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: ConstructArg,
        /// Number of DCT-1 bases, or the difference order.
        #[arg(short = 'p', long = "order")]
        order: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a refinement or order-sweep experiment on a built-in function.
    Experiment {
        #[arg(value_enum)]
        kind: KindArg,
        /// Config file with `function`, `coefficients`, `interval`, `p` and `n`.
        #[arg(long)]
        config: PathBuf,
        /// Compute rows one at a time instead of in parallel.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FitArg {
    Covariance,
    Autocorrelation,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConstructArg {
    Dct,
    Diff,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Refine,
    OrderSweep,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn read_signal(path: &Path) -> Result<Signal> {
    parse_signal(&read(path)?).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn read_key_values(path: &Path) -> Result<KeyValues> {
    KeyValues::parse(&read(path)?).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Executes one parsed command, writing its output.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Synth {
            input,
            count,
            output,
        } => {
            let spec = read_key_values(&input)?;
            let csv = commands::synth(&spec, count).map_err(|e| prefix_data(e, &input))?;
            emit(&csv, output.as_deref())
        }
        Command::Fit {
            input,
            order,
            method,
            output,
        } => {
            let signal = read_signal(&input)?;
            let method = match method {
                FitArg::Covariance => FitMethod::Covariance,
                FitArg::Autocorrelation => FitMethod::Autocorrelation,
            };
            let doc = commands::fit(&signal, &input.display().to_string(), order, method)?;
            emit(&doc.to_json()?, output.as_deref())
        }
        Command::Construct {
            input,
            method,
            order,
            output,
        } => {
            let signal = read_signal(&input)?;
            let method = match method {
                ConstructArg::Dct => ConstructMethod::Dct,
                ConstructArg::Diff => ConstructMethod::Diff,
            };
            let doc = commands::construct(&signal, &input.display().to_string(), method, order)?;
            emit(&doc.to_json()?, output.as_deref())
        }
        Command::Experiment {
            kind,
            config,
            sequential,
            output,
        } => {
            let kind = match kind {
                KindArg::Refine => ExperimentKind::Refine,
                KindArg::OrderSweep => ExperimentKind::OrderSweep,
            };
            let kv = read_key_values(&config)?;
            let cfg = ExperimentConfig::parse(&kv, kind).map_err(|e| prefix_data(e, &config))?;
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let doc = commands::experiment(kind, &cfg, &config.display().to_string(), exec)?;
            emit(&doc.to_json()?, output.as_deref())
        }
    }
}

fn prefix_data(e: CliError, path: &Path) -> CliError {
    match e {
        CliError::Data(msg) => CliError::Data(format!("{}: {msg}", path.display())),
        other => other,
    }
}

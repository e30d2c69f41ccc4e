//! Library side of the `charpoly` binary: argument types, command
//! implementations and exit-code mapping. Commands write to any
//! [`std::io::Write`], so tests can capture their output.

mod bench;
mod compute;
mod reproduce;
mod table;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use labudde_core::{Error as CoreError, GalleryName};

pub use bench::{bench, BenchRow};
pub use compute::{compute, ComputeOutput, Row};
pub use reproduce::{reproduce, Experiment, SeriesPoint};

#[derive(Debug, Parser)]
#[command(
    name = "charpoly",
    version,
    about = "Characteristic polynomial coefficients with running error bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients c_1..c_k of det(lambda I - A) for one matrix.
    Compute(ComputeArgs),
    /// Data series for one of the standard test-matrix experiments.
    Reproduce(ReproduceArgs),
    /// Stage timings over a list of orders.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Labudde,
    EigSummation,
    Leverrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// Matrix Market file.
    #[arg(long, conflicts_with = "gallery", required_unless_present = "gallery")]
    pub input: Option<PathBuf>,
    /// Gallery matrix name.
    #[arg(long, value_parser = parse_gallery_name)]
    pub gallery: Option<GalleryName>,
    /// Order of the gallery matrix.
    #[arg(long)]
    pub n: Option<usize>,
    /// Forsythe perturbation.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Toeplitz off-diagonal value.
    #[arg(long)]
    pub b: Option<f64>,
    /// Comma-separated companion coefficients c_1,..,c_n.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Seed for randomised gallery matrices.
    #[arg(long, env = "CHARPOLY_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Number of coefficients; defaults to n.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "labudde")]
    pub method: MethodArg,
    /// Leave the bound column empty.
    #[arg(long)]
    pub no_bounds: bool,
    /// Compare against exact rational coefficients (n <= 64).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Constant in the backward-error model of the reduction.
    #[arg(long, default_value_t = labudde_core::DEFAULT_NU)]
    pub bound_nu: f64,
    /// Report the overall bound (reduction plus recursion) in the bound column.
    #[arg(long, conflicts_with = "no_bounds")]
    pub overall: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// Matrix order; defaults depend on the experiment.
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed of the random orthogonal factor (forsythe).
    #[arg(long, env = "CHARPOLY_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Comma-separated matrix orders, at least two.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Repetitions per size; the minimum time is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, env = "CHARPOLY_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

fn parse_gallery_name(s: &str) -> Result<GalleryName, String> {
    s.parse().map_err(|e: CoreError| e.to_string())
}

/// Failure of a command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(CoreError),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoreError::Spec(_) | CoreError::Index { .. } => 2,
                CoreError::Structure(_) | CoreError::Dimension(_) => 3,
                CoreError::NonFinite { .. }
                | CoreError::Overflow(_)
                | CoreError::Domain(_)
                | CoreError::EigFailure => 4,
                CoreError::Hypothesis(_) => 5,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Runs a parsed command, writing its table to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Compute(args) => {
            let res = compute(args)?;
            match args.format {
                Format::Csv => table::write_compute_csv(out, &res)?,
                Format::Json => table::write_json(out, &res)?,
            }
        }
        Command::Reproduce(args) => {
            let points = reproduce(args)?;
            table::write_series_csv(out, &points)?;
        }
        Command::Bench(args) => {
            let report = bench(args)?;
            match args.format {
                Format::Csv => table::write_bench_csv(out, &report)?,
                Format::Json => table::write_json(out, &report)?,
            }
        }
    }
    out.flush()?;
    Ok(())
}

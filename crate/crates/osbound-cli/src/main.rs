//! `osbound`: envelope bounds, distances, convergence tables, property
//! verification, sample-mean bounds, and weight optimization on the
//! command line.
//!
//! Exit codes: 0 success, 1 property violation or computation failure,
//! 2 usage or configuration error.

mod commands;
mod parse;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// A failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, parameters, or input files: exit 2.
    Usage(String),
    /// A checked property failed or a computation did not converge:
    /// exit 1.
    Fault(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Fault(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Fault(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "osbound",
    version,
    about = "Two-sided order-statistic envelope bounds for distribution functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the envelope lower(x) <= F(x) <= upper(x) on a grid.
    Bounds(BoundsArgs),
    /// Integrated L1 or squared-L2 width of the envelope.
    Distance(DistanceArgs),
    /// Convergence table of the width over the sequence index m.
    Table(TableArgs),
    /// Check envelope, nesting, and sample-bound properties.
    Verify(VerifyArgs),
    /// Weighted order-statistic bounds around one sample's mean.
    SampleBounds(SampleBoundsArgs),
    /// Grid search for minimum-width weights under a spread constraint.
    Optimize(OptimizeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Uniform,
    Normal,
    Exp,
    Empirical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    L1,
    L2,
}

#[derive(Args)]
pub struct DistArgs {
    /// Underlying distribution kind.
    #[arg(long = "dist", value_enum)]
    kind: DistKind,

    /// Parameters: "a,b" for uniform (default "0,1"), "rate" for exp
    /// (default "1"). Normal and empirical kinds take none.
    #[arg(long, value_name = "LIST")]
    params: Option<String>,

    /// Sample file for --dist empirical: one decimal per line, blank
    /// lines skipped.
    #[arg(long, value_name = "FILE")]
    data: Option<PathBuf>,
}

/// Exactly one weight source: an explicit list, a sequence index, or the
/// uniform vector.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct WeightArgs {
    /// Explicit nonincreasing weights, decimals or fractions:
    /// "5/9,3/9,1/9".
    #[arg(long, value_name = "LIST")]
    weights: Option<String>,

    /// Sequence index: use the convergent weights p(m) of length --n.
    #[arg(long)]
    m: Option<u64>,

    /// Use the uniform weights of length --n (collapses the envelope).
    #[arg(long)]
    uniform: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    dist: DistArgs,

    #[command(flatten)]
    weights: WeightArgs,

    /// Weight count when --m or --uniform selects the weights.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=1000))]
    n: u64,

    /// Number of grid points.
    #[arg(long, default_value_t = 401, value_parser = clap::value_parser!(u64).range(2..=1_000_000))]
    grid_points: u64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    dist: DistArgs,

    #[command(flatten)]
    weights: WeightArgs,

    /// Weight count when --m or --uniform selects the weights.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=1000))]
    n: u64,

    /// Width metric: integrated gap (l1) or integrated squared gap (l2).
    #[arg(long, value_enum, default_value_t = Metric::L2)]
    metric: Metric,

    /// Absolute quadrature tolerance.
    #[arg(long, env = "OSBOUND_TOL", default_value_t = 1e-9)]
    tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Weight count n.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=1000))]
    n: u64,

    /// Sequence indices to tabulate, e.g. "1,2,3,4,5".
    #[arg(long, value_name = "LIST")]
    m_list: String,

    /// Decay exponent for the ratio column delta * m^(1-alpha).
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,

    /// Append the published reference column (normal, n = 3 only).
    #[arg(long)]
    paper_table: bool,

    /// Absolute quadrature tolerance.
    #[arg(long, env = "OSBOUND_TOL", default_value_t = 1e-9)]
    tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Weight count n.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=1000))]
    n: u64,

    /// Sequence index m; the inner envelope uses the weights p(m).
    #[arg(long, default_value_t = 1)]
    m: u64,

    /// Outer weight vector q for the nesting check; must majorize p(m).
    /// Defaults to q = p(m-1), saturating at p(0).
    #[arg(long, value_name = "LIST")]
    weights: Option<String>,

    /// Monte Carlo trials for the sample-mean bound check.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,

    /// Seed for the deterministic sampler.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Probability-spaced grid points for the pointwise checks.
    #[arg(long, default_value_t = 2001, value_parser = clap::value_parser!(u64).range(2..=1_000_000))]
    grid_points: u64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
#[command(group(
    clap::ArgGroup::new("sample_source").required(true).args(["samples", "data"])
))]
struct SampleBoundsArgs {
    /// Inline sample values, decimals or fractions: "1,2,3".
    #[arg(long, value_name = "LIST")]
    samples: Option<String>,

    /// Sample file: one decimal per line, blank lines skipped.
    #[arg(long, value_name = "FILE")]
    data: Option<PathBuf>,

    #[command(flatten)]
    weights: WeightArgs,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Weight count n (grid search supports 1 through 4).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=4))]
    n: u64,

    /// Required spread w_1 - w_n of the optimized vector, decimal or
    /// fraction ("2/15").
    #[arg(long, default_value_t = 0.0, value_parser = parse::ratio_value)]
    gap: f64,

    /// Grid denominator: weights are multiples of 1/denominator.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..=60))]
    denominator: u32,

    /// Absolute quadrature tolerance.
    #[arg(long, env = "OSBOUND_TOL", default_value_t = 1e-9)]
    tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds(a) => commands::bounds(a),
        Command::Distance(a) => commands::distance(a),
        Command::Table(a) => commands::table(a),
        Command::Verify(a) => commands::verify(a),
        Command::SampleBounds(a) => commands::sample_bounds(a),
        Command::Optimize(a) => commands::optimize(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

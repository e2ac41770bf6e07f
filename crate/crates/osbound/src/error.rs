//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by input validation, quadrature, and sample-file ingestion.
#[derive(Debug, Error)]
pub enum Error {
    /// An input slice that must hold at least one element is empty.
    #[error("input must be non-empty")]
    EmptyInput,

    /// A weight entry is negative.
    #[error("weight w[{index}] = {value} is negative")]
    NegativeWeight { index: usize, value: f64 },

    /// Weights are not in nonincreasing order.
    #[error(
        "weights must be nonincreasing: w[{index}] = {prev} is less than the next entry {next}"
    )]
    UnorderedWeights { index: usize, prev: f64, next: f64 },

    /// Weights or signature entries do not sum to one.
    #[error("weights sum to {sum:.17}, expected 1 within {tol:e}")]
    WeightSum { sum: f64, tol: f64 },

    /// Two sequences that must have equal length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Order-statistic rank outside 1..=n.
    #[error("order-statistic rank {i} out of range 1..={n}")]
    RankOutOfRange { i: usize, n: usize },

    /// A scalar parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Quantile argument outside the distribution's valid probability range.
    #[error("quantile argument {u} outside the valid probability range")]
    QuantileOutOfRange { u: f64 },

    /// Adaptive quadrature exhausted its depth budget before reaching the
    /// requested tolerance.
    #[error(
        "quadrature did not converge: achieved error {achieved:e} exceeds requested {requested:e} (partial value {value})"
    )]
    QuadratureNonConvergence {
        value: f64,
        achieved: f64,
        requested: f64,
    },

    /// No grid vector with the given denominator satisfies the gap constraint.
    #[error("no weight vector with denominator {denominator} satisfies gap {gap}")]
    InfeasibleGap { gap: f64, denominator: u32 },

    /// A sample-file line failed to parse as a finite real number.
    #[error("line {line}: cannot parse {content:?} as a finite real number")]
    SampleParse { line: usize, content: String },

    /// I/O failure while reading a sample file.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared across the crate.

use std::fmt;

/// All failure modes of coefficient generation, weight expansion,
/// verification, and grid application.
#[derive(Debug)]
pub enum Error {
    /// Two truncated series with different truncation orders were combined.
    TruncationMismatch { left: usize, right: usize },
    /// A fractional series power was requested on a series whose constant
    /// term is not exactly one.
    ConstantTermNotOne,
    /// The fractional order of a generator spec is zero (or non-positive).
    ZeroAlpha,
    /// A structurally invalid argument (p = 0, truncation too short, bad
    /// grid parameters, ...).
    InvalidSpec(String),
    /// Degenerate generator: zero constant term. Weight expansion divides
    /// by the constant term and must reject such generators.
    DegenerateGenerator,
    /// A fractional power of a negative base was requested; weight
    /// sequences are real, so this is rejected instead of going complex.
    NegativePower(f64),
    /// Exact arithmetic cannot represent the requested fractional power.
    IrrationalPower,
    /// A weight overflowed or otherwise became non-finite during expansion.
    NonFiniteWeights { index: usize },
    /// Inconsistent generator: the coefficients do not sum to zero, so the
    /// symbol has a pole at z = 0. Carries the residual sum.
    InconsistentGenerator(f64),
    /// Gamma-function pole: mu + 1 - alpha is a non-positive integer.
    GammaPole(f64),
    /// A sampled grid function was asked for a value between grid points.
    OffGridEvaluation(f64),
    /// The supplied weight sequence is too short to cover the requested sum.
    InsufficientWeights { needed: usize, got: usize },
    /// Malformed numeric or structured input.
    Parse(String),
    /// Unknown rendering format name.
    UnknownFormat(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TruncationMismatch { left, right } => {
                write!(f, "truncation orders differ: {left} vs {right}")
            }
            Error::ConstantTermNotOne => {
                write!(f, "series power requires constant term exactly 1")
            }
            Error::ZeroAlpha => write!(f, "fractional order alpha must be positive"),
            Error::InvalidSpec(msg) => write!(f, "invalid argument: {msg}"),
            Error::DegenerateGenerator => {
                write!(f, "degenerate generator: zero constant term")
            }
            Error::NegativePower(base) => {
                write!(f, "fractional power of negative base {base}")
            }
            Error::IrrationalPower => {
                write!(f, "fractional power is not representable exactly")
            }
            Error::NonFiniteWeights { index } => {
                write!(f, "weight w_{index} is not finite (divergent expansion)")
            }
            Error::InconsistentGenerator(residual) => write!(
                f,
                "inconsistent generator: coefficient sum {residual} != 0 (pole at z = 0)"
            ),
            Error::GammaPole(arg) => {
                write!(f, "gamma pole at {arg}: mu + 1 - alpha must not be a non-positive integer")
            }
            Error::OffGridEvaluation(x) => {
                write!(f, "sampled grid function cannot be evaluated off-grid at x = {x}")
            }
            Error::InsufficientWeights { needed, got } => {
                write!(f, "weight sequence too short: need {needed}, got {got}")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::UnknownFormat(name) => write!(f, "unknown format: {name}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

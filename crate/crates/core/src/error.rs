use thiserror::Error;

/// Errors raised by fuzzy arithmetic, function evaluation and the solver.
///
/// Numeric payloads are reported as `f64` regardless of the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid triangular fuzzy number ({left}, {peak}, {right})")]
    InvalidTriangular { left: f64, peak: f64, right: f64 },
    #[error("an alpha grid needs at least 2 levels, got {0}")]
    GridTooSmall(usize),
    #[error("alpha grids differ: {left} vs {right} levels")]
    GridMismatch { left: usize, right: usize },
    #[error("malformed fuzzy number at alpha = {alpha}: {reason}")]
    MalformedLevels { alpha: f64, reason: &'static str },
    #[error("divisor level at alpha = {alpha} contains zero")]
    SingularDivisor { alpha: f64 },
    #[error("fuzzy-valued function is malformed at x = {x}, alpha = {alpha}: {reason}")]
    MalformedFunction {
        x: f64,
        alpha: f64,
        reason: &'static str,
    },
    #[error("non-finite value encountered at x = {x}")]
    NonFinite { x: f64 },
    #[error("x = {x} is outside the domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

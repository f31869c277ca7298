use thiserror::Error;

/// Errors raised by the approximation kernel, density validation and the
/// statistics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: endpoints must be finite with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("function value {value} at x = {x} is not finite")]
    NonFinite { x: f64, value: f64 },

    #[error("approximation did not converge on [{lo}, {hi}] after {depth} subdivisions")]
    NoConvergence { lo: f64, hi: f64, depth: usize },

    #[error("tolerance {0} is outside (0, 1e-6]")]
    InvalidTolerance(f64),

    #[error("breakpoint {0} does not lie strictly inside the domain")]
    InvalidBreakpoint(f64),

    #[error("density takes the negative value {value} at x = {x}")]
    NegativeDensity { x: f64, value: f64 },

    #[error("density has total mass {mass}, expected 1")]
    MassMismatch { mass: f64 },

    #[error("density is not monotone on [{lo}, {hi}]")]
    NotMonotone { lo: f64, hi: f64 },

    #[error("level {level} is outside the range [{min}, {max}] of the piece")]
    LevelOutOfRange { level: f64, min: f64, max: f64 },

    #[error("argument {0} is negative")]
    NegativeArgument(f64),

    #[error("{name} = {value} is out of range, expected {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("sample is empty")]
    EmptySample,

    #[error("average term is not finite ({value}) for draw {index} (x = {draw})")]
    NonFiniteTerm { index: usize, draw: f64, value: f64 },

    #[error("unknown example suite {name:?}; available: {available}")]
    UnknownSuite { name: String, available: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

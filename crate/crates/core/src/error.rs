use thiserror::Error;

use crate::config::PointConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor classes live on different surfaces (r = {left} vs r = {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operation `{op}` is not supported for configuration {config}")]
    UnsupportedConfig {
        op: &'static str,
        config: PointConfig,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("class {0} is not numerically effective")]
    NotNef(String),

    #[error("Riemann-Roch numerator {0} is odd")]
    ParityViolation(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("iteration guard exceeded in {0}")]
    GuardExceeded(&'static str),

    #[error("inconsistent staircase data: {0}")]
    Staircase(String),
}

impl Error {
    /// Arithmetic guards (overflow, runaway loops) as opposed to bad input.
    pub fn is_arithmetic_guard(&self) -> bool {
        matches!(self, Error::Overflow(_) | Error::GuardExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by argument validation in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Rotation axes must be unit vectors; tolerance 1e-9 on the norm.
    #[error("rotation axis must have unit norm (got |axis| = {0})")]
    NonUnitAxis(f64),

    /// `residual_energy` is the h = 0 evaluator; finite fields go through
    /// `energy_expectation`.
    #[error("residual_energy requires h = 0 (got h = {0}); use energy_expectation instead")]
    NonzeroField(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

use crate::result::OptimResult;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] fermion_core::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The objective or gradient became non-finite during the search; the
    /// last well-defined iterate is attached.
    #[error("non-finite objective or gradient at iteration {iteration}")]
    NumericalFailure {
        iteration: usize,
        last_good: Box<OptimResult>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

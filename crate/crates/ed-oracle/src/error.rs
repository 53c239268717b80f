use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Dense simulation is capped to keep memory and diagonalization
    /// desk-scale.
    #[error("chain of {n_sites} sites exceeds the dense-simulation cap of {max}")]
    ResourceLimit { n_sites: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

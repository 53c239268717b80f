use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("core evaluation error: {0}")]
    Core(#[from] fermion_core::Error),

    #[error("optimizer error: {0}")]
    Optimizer(#[from] schedule_optimizer::Error),

    #[error("dynamics error: {0}")]
    Dynamics(#[from] continuous_dynamics::Error),

    #[error("oracle error: {0}")]
    Oracle(#[from] ed_oracle::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Batch experiments over the digitized-annealing toolchain: named,
//! seeded, config-driven runs that write plot-ready CSV/JSON with stable
//! schemas and byte-reproducible content.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use config::{ConfigError, Experiment, Overrides, RunConfig, OUT_DIR_ENV};
pub use error::{Error, Result};
pub use experiments::{run, Outcome};

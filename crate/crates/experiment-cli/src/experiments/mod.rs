pub mod bound_scan;
pub mod collapse;
pub mod compare;
pub mod degeneracy;
pub mod field_scan;
pub mod regular;
pub mod validate;

use crate::config::{Experiment, RunConfig};
use crate::error::Result;
use std::path::PathBuf;

/// What a finished run reports back to the binary.
pub struct Outcome {
    pub files: Vec<PathBuf>,
    /// `Some(false)` marks a failed validation run (exit code 1).
    pub validation_passed: Option<bool>,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let (files, validation_passed) = match cfg.experiment {
        Experiment::BoundScan => (bound_scan::run(cfg)?, None),
        Experiment::Regular => (regular::run(cfg)?, None),
        Experiment::Degeneracy => (degeneracy::run(cfg)?, None),
        Experiment::CompareSchedules => (compare::run(cfg)?, None),
        Experiment::Collapse => (collapse::run(cfg)?, None),
        Experiment::FieldScan => (field_scan::run(cfg)?, None),
        Experiment::Validate => {
            let (files, passed) = validate::run(cfg)?;
            (files, Some(passed))
        }
    };
    Ok(Outcome {
        files,
        validation_passed,
    })
}

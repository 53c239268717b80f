//! Continuous-time annealing baselines for the transverse-field Ising
//! chain: per-mode Bloch-equation integration of linear and Roland-Cerf
//! schedules, step digitization, residual-energy scaling fits, and the
//! rescaled-schedule collapse transform.

mod collapse;
mod error;
mod evolve;
mod fit;
mod schedule;

pub use collapse::{
    collapse_distance, collapse_transform, max_consecutive_distance, CollapseCurve, CENTRAL_WINDOW,
};
pub use error::{Error, Result};
pub use evolve::{bloch_evolve, default_dt_step, BlochOutcome};
pub use fit::{scaling_fit, RecipFit, ScalingFit};
pub use schedule::{roland_cerf_schedule, step_discretize, AnnealSchedule};

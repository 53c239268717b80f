//! Exact evaluation of digitized quantum-annealing circuits on the
//! transverse-field Ising chain.
//!
//! The chain maps to free fermions, so a depth-P alternating circuit acts on
//! each wave-vector mode as a product of 2P axis-angle rotations of a
//! three-component Bloch vector. Energies, residual energies and schedule
//! durations all follow from those rotation products at O(P) cost per mode,
//! for any chain size.

mod angles;
mod bloch;
mod chain;
mod energy;
mod error;

pub use angles::{digitize, schedule_duration, undigitize, QaoaAngles};
pub use bloch::{rotate, rotate_unchecked, target_axis, BlochVector, UNIT_X, UNIT_Z};
pub use chain::{k_grid, Boundary, ChainSpec, KGrid};
pub use energy::{
    energy_expectation, epsilon_k, field_report, lambda_k, lambda_sum, propagate_mode,
    residual_energy, EnergyReport, EvalBranch,
};
pub use error::{Error, Result};

//! Brute-force simulation of the periodic Ising chain: dense state vectors,
//! exact expectation values and spectral bounds for chains of up to 14
//! spins.
//!
//! Everything here is deliberately independent of the per-mode free-fermion
//! evaluation, so the two paths cross-check each other.

mod energy;
mod error;
mod lanczos;
mod state;

pub use energy::{anneal_evolve, eps_res_ed, spectral_bounds};
pub use error::{Error, Result};
pub use lanczos::extreme_eigenvalues;
pub use state::{hz_diagonal, qaoa_state, StateVector, MAX_SITES};

//! Chain geometry: system size, field, boundary condition and the set of
//! dynamically active wave-vectors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Spin-chain boundary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    /// Periodic boundary conditions.
    Pbc,
    /// Anti-periodic boundary conditions; used for the reduced-chain
    /// evaluation of the residual energy.
    Abc,
}

/// Ising chain under evaluation: `n_sites` spins, transverse field
/// `field >= 0`, boundary condition for the spin couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub n_sites: usize,
    pub field: f64,
    pub boundary: Boundary,
}

impl ChainSpec {
    /// A periodic chain. `n_sites` must be even and at least 4, `field >= 0`.
    pub fn new(n_sites: usize, field: f64) -> Result<Self> {
        Self::with_boundary(n_sites, field, Boundary::Pbc)
    }

    pub fn with_boundary(n_sites: usize, field: f64, boundary: Boundary) -> Result<Self> {
        if !n_sites.is_multiple_of(2) || n_sites < 4 {
            return Err(Error::InvalidArgument(format!(
                "n_sites must be even and >= 4 (got {n_sites})"
            )));
        }
        if !(field.is_finite() && field >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "field must be finite and >= 0 (got {field})"
            )));
        }
        Ok(Self { n_sites, field, boundary })
    }
}

/// Ordered wave-vectors in the open interval (0, pi).
#[derive(Debug, Clone, PartialEq)]
pub struct KGrid {
    wavevectors: Vec<f64>,
}

impl KGrid {
    pub fn wavevectors(&self) -> &[f64] {
        &self.wavevectors
    }

    pub fn len(&self) -> usize {
        self.wavevectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wavevectors.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.wavevectors.iter()
    }
}

/// Wave-vector set for a chain of `n_r` sites.
///
/// PBC: k = (2n - 1) pi / n_r for n = 1 .. n_r/2 (n_r/2 modes).
/// ABC: k = 2 n pi / n_r for n = 1 .. n_r/2 - 1 (n_r/2 - 1 modes; the
/// self-conjugate k = 0, pi modes stay frozen in the initial state and
/// drop out of the dynamics).
pub fn k_grid(boundary: Boundary, n_r: usize) -> Result<KGrid> {
    if !n_r.is_multiple_of(2) || n_r < 4 {
        return Err(Error::InvalidArgument(format!(
            "k_grid requires an even chain length >= 4 (got {n_r})"
        )));
    }
    let nf = n_r as f64;
    let wavevectors = match boundary {
        Boundary::Pbc => (1..=n_r / 2)
            .map(|n| (2 * n - 1) as f64 * std::f64::consts::PI / nf)
            .collect(),
        Boundary::Abc => (1..n_r / 2)
            .map(|n| (2 * n) as f64 * std::f64::consts::PI / nf)
            .collect(),
    };
    Ok(KGrid { wavevectors })
}

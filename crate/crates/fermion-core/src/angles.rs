//! Variational angles of the depth-P alternating circuit and their relation
//! to piecewise-constant annealing schedules.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The 2P variational parameters of a depth-P circuit, in radians
/// (hbar = J = 1).
///
/// Serializes as `{"gammas": [...], "betas": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaAngles {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl QaoaAngles {
    /// Build a parameter set; both sequences must be non-empty, of equal
    /// length, and finite.
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::InvalidArgument(format!(
                "gammas and betas must have equal non-zero length (got {} and {})",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(betas.iter()).any(|a| !a.is_finite()) {
            return Err(Error::InvalidArgument(
                "angles must be finite".to_string(),
            ));
        }
        Ok(Self { gammas, betas })
    }

    /// All-zero angles at depth `p` (the identity circuit).
    pub fn zeros(p: usize) -> Self {
        Self {
            gammas: vec![0.0; p],
            betas: vec![0.0; p],
        }
    }

    /// Circuit depth P.
    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Flatten to `[gamma_1..gamma_P, beta_1..beta_P]` (optimizer layout).
    pub fn to_flat(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 * self.depth());
        v.extend_from_slice(&self.gammas);
        v.extend_from_slice(&self.betas);
        v
    }

    /// Inverse of [`QaoaAngles::to_flat`].
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if flat.is_empty() || !flat.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "flat angle vector must have even non-zero length (got {})",
                flat.len()
            )));
        }
        let p = flat.len() / 2;
        Self::new(flat[..p].to_vec(), flat[p..].to_vec())
    }
}

/// Map a piecewise-constant schedule to circuit angles via lowest-order
/// splitting: `gamma_m = s_m dt_m`, `beta_m = ((1 - s_m) + h s_m) dt_m`.
///
/// Each `s_m` must lie in (0, 1] and each `dt_m` must be positive.
pub fn digitize(s_values: &[f64], dt_values: &[f64], h: f64) -> Result<QaoaAngles> {
    if s_values.is_empty() || s_values.len() != dt_values.len() {
        return Err(Error::InvalidArgument(format!(
            "s_values and dt_values must have equal non-zero length (got {} and {})",
            s_values.len(),
            dt_values.len()
        )));
    }
    for &s in s_values {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "schedule values must lie in (0, 1] (got {s})"
            )));
        }
    }
    for &dt in dt_values {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "time steps must be positive (got {dt})"
            )));
        }
    }
    let gammas: Vec<f64> = s_values
        .iter()
        .zip(dt_values)
        .map(|(&s, &dt)| s * dt)
        .collect();
    let betas: Vec<f64> = s_values
        .iter()
        .zip(dt_values)
        .map(|(&s, &dt)| ((1.0 - s) + h * s) * dt)
        .collect();
    QaoaAngles::new(gammas, betas)
}

/// Recover the schedule underlying a set of angles: `dt_m` from the sum
/// rule, `s_m = gamma_m / dt_m`. Inverse of [`digitize`].
pub fn undigitize(angles: &QaoaAngles, h: f64) -> (Vec<f64>, Vec<f64>) {
    let dt: Vec<f64> = angles
        .gammas()
        .iter()
        .zip(angles.betas())
        .map(|(&g, &b)| b + (1.0 - h) * g)
        .collect();
    let s: Vec<f64> = angles
        .gammas()
        .iter()
        .zip(&dt)
        .map(|(&g, &dt)| g / dt)
        .collect();
    (s, dt)
}

/// Total annealing time implied by the angles (sum rule):
/// `tau = sum_m (beta_m + (1 - h) gamma_m)`, in units of hbar/J.
pub fn schedule_duration(angles: &QaoaAngles, h: f64) -> f64 {
    angles
        .gammas()
        .iter()
        .zip(angles.betas())
        .map(|(&g, &b)| b + (1.0 - h) * g)
        .sum()
}

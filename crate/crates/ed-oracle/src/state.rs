//! Dense state vectors for the periodic Ising chain in the computational
//! z-basis, site 0 = least-significant bit.

use crate::error::{Error, Result};
use fermion_core::QaoaAngles;
use num_complex::Complex64;

/// Largest chain the simulator accepts (16384 amplitudes).
pub const MAX_SITES: usize = 14;

/// A normalized many-body wave function over `2^n` computational basis
/// states.
#[derive(Debug, Clone)]
pub struct StateVector {
    n_sites: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The ground state of the driver: every spin polarized along +x,
    /// i.e. a uniform superposition in the z-basis.
    pub fn plus_state(n_sites: usize) -> Result<Self> {
        check_sites(n_sites)?;
        let dim = 1usize << n_sites;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            n_sites,
            amplitudes: vec![amp; dim],
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Replace the amplitude vector (length must match).
    pub(crate) fn set_amplitudes(&mut self, amplitudes: Vec<Complex64>) {
        debug_assert_eq!(amplitudes.len(), self.amplitudes.len());
        self.amplitudes = amplitudes;
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Phase layer `exp(-i gamma H_z)`; `H_z` is diagonal in this basis.
    pub fn apply_target_phase(&mut self, gamma: f64, hz_diag: &[f64]) {
        for (a, &e) in self.amplitudes.iter_mut().zip(hz_diag) {
            *a *= Complex64::from_polar(1.0, -gamma * e);
        }
    }

    /// Mixing layer `exp(-i beta H_x)` with `H_x = -sum_j sigma^x_j`:
    /// a product of single-site x-rotations `cos(beta) I + i sin(beta) X`.
    pub fn apply_driver_layer(&mut self, beta: f64) {
        let (sin, cos) = beta.sin_cos();
        let isin = Complex64::new(0.0, sin);
        for j in 0..self.n_sites {
            let bit = 1usize << j;
            for z in 0..self.amplitudes.len() {
                if z & bit == 0 {
                    let a0 = self.amplitudes[z];
                    let a1 = self.amplitudes[z | bit];
                    self.amplitudes[z] = cos * a0 + isin * a1;
                    self.amplitudes[z | bit] = isin * a0 + cos * a1;
                }
            }
        }
    }

    /// Expectation of the diagonal coupling term.
    pub fn expect_hz(&self, hz_diag: &[f64]) -> f64 {
        self.amplitudes
            .iter()
            .zip(hz_diag)
            .map(|(a, &e)| e * a.norm_sqr())
            .sum()
    }

    /// Expectation of the driver `H_x = -sum_j sigma^x_j`.
    pub fn expect_hx(&self) -> f64 {
        let mut total = 0.0;
        for j in 0..self.n_sites {
            let bit = 1usize << j;
            let mut sx = 0.0;
            for z in 0..self.amplitudes.len() {
                sx += (self.amplitudes[z].conj() * self.amplitudes[z ^ bit]).re;
            }
            total -= sx;
        }
        total
    }

    /// Expectation of the global parity `prod_j sigma^x_j`; conserved and
    /// equal to +1 for every state this crate generates.
    pub fn parity_x(&self) -> f64 {
        let mask = self.amplitudes.len() - 1;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(z, a)| (a.conj() * self.amplitudes[z ^ mask]).re)
            .sum()
    }
}

fn check_sites(n_sites: usize) -> Result<()> {
    if n_sites == 0 || !n_sites.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "n_sites must be a positive even integer (got {n_sites})"
        )));
    }
    if n_sites > MAX_SITES {
        return Err(Error::ResourceLimit {
            n_sites,
            max: MAX_SITES,
        });
    }
    Ok(())
}

/// Diagonal of the periodic antiferromagnetic coupling
/// `H_z = sum_j sigma^z_j sigma^z_{j+1}` over all basis states.
pub fn hz_diagonal(n_sites: usize) -> Vec<f64> {
    let dim = 1usize << n_sites;
    let mut diag = Vec::with_capacity(dim);
    for z in 0..dim {
        let mut e = 0i64;
        for j in 0..n_sites {
            let s_j = 1 - 2 * ((z >> j) & 1) as i64;
            let s_next = 1 - 2 * ((z >> ((j + 1) % n_sites)) & 1) as i64;
            e += s_j * s_next;
        }
        diag.push(e as f64);
    }
    diag
}

/// Prepare the depth-P circuit state by applying
/// `exp(-i beta_m H_x) exp(-i gamma_m H_z)` for m = 1..P to the +x product
/// state. Fails with a resource-limit error for `n_sites > 14`.
pub fn qaoa_state(angles: &QaoaAngles, n_sites: usize) -> Result<StateVector> {
    check_sites(n_sites)?;
    let hz = hz_diagonal(n_sites);
    let mut state = StateVector::plus_state(n_sites)?;
    for (&gamma, &beta) in angles.gammas().iter().zip(angles.betas()) {
        state.apply_target_phase(gamma, &hz);
        state.apply_driver_layer(beta);
    }
    Ok(state)
}

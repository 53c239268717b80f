//! Residual energies from the dense simulation, and a continuous-time
//! Schrödinger integrator for cross-checking annealing dynamics.

use crate::error::{Error, Result};
use crate::lanczos::extreme_eigenvalues;
use crate::state::{hz_diagonal, qaoa_state, StateVector, MAX_SITES};
use fermion_core::{EnergyReport, QaoaAngles};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Mutex;

/// Apply the target Hamiltonian `H_z + h H_x` to a real vector.
fn apply_target(n_sites: usize, h: f64, hz: &[f64], v: &[f64]) -> Vec<f64> {
    let mut w: Vec<f64> = v.iter().zip(hz).map(|(x, e)| x * e).collect();
    for j in 0..n_sites {
        let bit = 1usize << j;
        for z in 0..v.len() {
            w[z] -= h * v[z ^ bit];
        }
    }
    w
}

/// Spectral extremes of `H_z + h H_x` on the periodic chain.
///
/// For `h = 0` the even-size antiferromagnet is unfrustrated and the
/// extremes are exactly -N and +N. For `h > 0` they come from a Lanczos
/// iteration on the sparse operator; values are memoized per `(N, h)`.
pub fn spectral_bounds(n_sites: usize, h: f64) -> Result<(f64, f64)> {
    if !n_sites.is_multiple_of(2) || n_sites == 0 {
        return Err(Error::InvalidArgument(format!(
            "n_sites must be positive and even (got {n_sites})"
        )));
    }
    if n_sites > MAX_SITES {
        return Err(Error::ResourceLimit {
            n_sites,
            max: MAX_SITES,
        });
    }
    if h == 0.0 {
        return Ok((-(n_sites as f64), n_sites as f64));
    }

    type BoundsCache = HashMap<(usize, u64), (f64, f64)>;
    static CACHE: Mutex<Option<BoundsCache>> = Mutex::new(None);
    let key = (n_sites, h.to_bits());
    let mut guard = CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(&bounds) = cache.get(&key) {
        return Ok(bounds);
    }
    let hz = hz_diagonal(n_sites);
    let dim = 1usize << n_sites;
    let bounds = extreme_eigenvalues(dim, |v| apply_target(n_sites, h, &hz, v));
    cache.insert(key, bounds);
    Ok(bounds)
}

fn report_for(state: &StateVector, h: f64) -> Result<EnergyReport> {
    let hz = hz_diagonal(state.n_sites());
    let energy = state.expect_hz(&hz) + h * state.expect_hx();
    let (e_min, e_max) = spectral_bounds(state.n_sites(), h)?;
    Ok(EnergyReport {
        energy,
        eps_res: (energy - e_min) / (e_max - e_min),
        e_min,
        e_max,
    })
}

/// Energy and rescaled residual energy of the depth-P circuit state against
/// the target `H_z + h H_x`, by direct operator application.
pub fn eps_res_ed(angles: &QaoaAngles, n_sites: usize, h: f64) -> Result<EnergyReport> {
    let state = qaoa_state(angles, n_sites)?;
    report_for(&state, h)
}

/// Continuous-time annealing of the full many-body state: integrates the
/// Schrödinger equation for `H(s) = s (H_z + h H_x) + (1 - s) H_x` with a
/// caller-supplied schedule `s(t)`, using fixed-step fourth-order
/// Runge-Kutta with per-step renormalization.
///
/// Exists to cross-check the per-mode Bloch integrator against the exact
/// dynamics on small chains.
pub fn anneal_evolve<F>(s_of_t: F, tau: f64, n_sites: usize, h: f64, n_steps: usize) -> Result<EnergyReport>
where
    F: Fn(f64) -> f64,
{
    if !tau.is_finite() || tau <= 0.0 || n_steps == 0 {
        return Err(Error::InvalidArgument(
            "anneal_evolve requires tau > 0 and n_steps > 0".to_string(),
        ));
    }
    let hz = hz_diagonal(n_sites);
    let mut state = StateVector::plus_state(n_sites)?;
    let dim = state.amplitudes().len();
    let dt = tau / n_steps as f64;

    // -i H(s) psi; driver coefficient (1 - s) + s h.
    let rhs = |s: f64, psi: &[Complex64]| -> Vec<Complex64> {
        let drv = (1.0 - s) + s * h;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for z in 0..dim {
            let mut acc = s * hz[z] * psi[z];
            let mut flip_sum = Complex64::new(0.0, 0.0);
            for j in 0..n_sites {
                flip_sum += psi[z ^ (1usize << j)];
            }
            acc -= drv * flip_sum;
            out[z] = Complex64::new(0.0, -1.0) * acc;
        }
        out
    };

    let mut psi: Vec<Complex64> = state.amplitudes().to_vec();
    for step in 0..n_steps {
        let t = step as f64 * dt;
        let k1 = rhs(s_of_t(t), &psi);
        let y2: Vec<Complex64> = psi.iter().zip(&k1).map(|(y, k)| y + 0.5 * dt * k).collect();
        let k2 = rhs(s_of_t(t + 0.5 * dt), &y2);
        let y3: Vec<Complex64> = psi.iter().zip(&k2).map(|(y, k)| y + 0.5 * dt * k).collect();
        let k3 = rhs(s_of_t(t + 0.5 * dt), &y3);
        let y4: Vec<Complex64> = psi.iter().zip(&k3).map(|(y, k)| y + dt * k).collect();
        let k4 = rhs(s_of_t(t + dt), &y4);
        for z in 0..dim {
            psi[z] += dt / 6.0 * (k1[z] + 2.0 * k2[z] + 2.0 * k3[z] + k4[z]);
        }
        let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in psi.iter_mut() {
            *a /= norm;
        }
    }

    state.set_amplitudes(psi);
    report_for(&state, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn identity_circuit_residual_is_half() {
        let report = eps_res_ed(&QaoaAngles::zeros(2), 8, 0.0).unwrap();
        assert!(report.energy.abs() < 1e-12);
        assert!((report.eps_res - 0.5).abs() < 1e-14);
    }

    #[test]
    fn depth_one_optimum_quarter_residual() {
        let angles = QaoaAngles::new(vec![PI / 8.0], vec![PI / 8.0]).unwrap();
        let report = eps_res_ed(&angles, 6, 0.0).unwrap();
        assert!((report.eps_res - 0.25).abs() < 1e-12);
        // <H_z> = -N/2 at the depth-1 optimum.
        assert!((report.energy + 3.0).abs() < 1e-12);
    }

    #[test]
    fn lanczos_bounds_match_free_fermion_formula() {
        // Ground/ceiling energies of the transverse-field chain equal
        // -/+ 2 sum_k Lambda_k over the periodic wave-vector grid.
        for &(n, h) in &[(4usize, 0.5f64), (6, 0.5), (8, 0.3), (8, 1.0)] {
            let grid = fermion_core::k_grid(fermion_core::Boundary::Pbc, n).unwrap();
            let expected = 2.0 * fermion_core::lambda_sum(&grid, h);
            let (lo, hi) = spectral_bounds(n, h).unwrap();
            assert!(
                (lo + expected).abs() < 1e-9,
                "n={n} h={h}: lanczos {lo} vs formula {}",
                -expected
            );
            assert!((hi - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn sudden_quench_leaves_initial_state() {
        let report = anneal_evolve(|t| t / 1e-4, 1e-4, 4, 0.0, 10).unwrap();
        assert!((report.eps_res - 0.5).abs() < 1e-3);
    }
}

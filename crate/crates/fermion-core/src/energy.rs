//! Exact energies of digitized-annealing states via per-mode rotation
//! products.
//!
//! Every wave-vector k is an independent two-level system. The circuit acts
//! on its Bloch vector as alternating rotations about the target axis `b_k`
//! (angle `4 gamma_m`) and the driver axis `z` (angle `4 beta_m`), applied in
//! order m = 1..P. The cost per mode is `epsilon_k = 1 - b_k . tau_k`, and
//! the rescaled residual energy is an average of the `epsilon_k` that depends
//! on the boundary condition:
//!
//! * `2P < N`: reduced chain of `n_r = 2P + 2` sites with anti-periodic
//!   boundaries, `eps_res = (1 + sum_k eps_k) / (2P + 2)`. This equals the
//!   full-chain value and is bounded below by `1/(2P + 2)`.
//! * `2P >= N`: the full periodic chain, `eps_res = (1/N) sum_k eps_k`,
//!   bounded below by zero.

use crate::angles::QaoaAngles;
use crate::bloch::{rotate_unchecked, target_axis, BlochVector, UNIT_Z};
use crate::chain::{k_grid, Boundary, ChainSpec, KGrid};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Energy of a variational state together with the spectral extremes used
/// to rescale it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    /// Expectation value of the target Hamiltonian.
    pub energy: f64,
    /// `(energy - e_min) / (e_max - e_min)`, in [0, 1].
    pub eps_res: f64,
    pub e_min: f64,
    pub e_max: f64,
}

impl EnergyReport {
    fn from_eps(eps_res: f64, e_min: f64, e_max: f64) -> Self {
        Self {
            energy: e_min + eps_res * (e_max - e_min),
            eps_res,
            e_min,
            e_max,
        }
    }

    fn from_energy(energy: f64, e_min: f64, e_max: f64) -> Self {
        Self {
            energy,
            eps_res: (energy - e_min) / (e_max - e_min),
            e_min,
            e_max,
        }
    }
}

/// Which decomposition a residual-energy evaluation at depth `p` on an
/// `n`-site chain uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalBranch {
    /// Reduced chain of `n_r = 2p + 2` sites, anti-periodic.
    ReducedAbc { n_r: usize },
    /// Full periodic chain of `n` sites.
    FullPbc { n: usize },
}

impl EvalBranch {
    /// Branch selection rule: the reduced chain applies whenever `2p < n`.
    pub fn select(p: usize, n_sites: usize) -> Self {
        if 2 * p < n_sites {
            EvalBranch::ReducedAbc { n_r: 2 * p + 2 }
        } else {
            EvalBranch::FullPbc { n: n_sites }
        }
    }

    pub fn grid(&self) -> Result<KGrid> {
        match self {
            EvalBranch::ReducedAbc { n_r } => k_grid(Boundary::Abc, *n_r),
            EvalBranch::FullPbc { n } => k_grid(Boundary::Pbc, *n),
        }
    }

    /// Combine a sum of per-mode costs into `eps_res`. Shared by the forward
    /// evaluator and the gradient engine so both produce bit-identical
    /// values for identical summation order.
    pub fn eps_res_from_mode_sum(&self, eps_sum: f64) -> f64 {
        match self {
            EvalBranch::ReducedAbc { n_r } => (1.0 + eps_sum) / *n_r as f64,
            EvalBranch::FullPbc { n } => eps_sum / *n as f64,
        }
    }
}

/// Bloch vector of mode `k` after the depth-P circuit:
/// `tau_k = R_z(4 b_P) R_bk(4 g_P) ... R_z(4 b_1) R_bk(4 g_1) z_hat`,
/// with the m = 1 factors applied first.
pub fn propagate_mode(angles: &QaoaAngles, k: f64) -> BlochVector {
    let axis = target_axis(k);
    let mut v = UNIT_Z;
    for (&g, &b) in angles.gammas().iter().zip(angles.betas()) {
        v = rotate_unchecked(&axis, 4.0 * g, &v);
        v = rotate_unchecked(&UNIT_Z, 4.0 * b, &v);
    }
    v
}

/// Per-mode cost `epsilon_k = 1 - b_k . tau_k`, in [0, 2]. It vanishes
/// exactly when the mode reaches its target state.
pub fn epsilon_k(angles: &QaoaAngles, k: f64) -> f64 {
    1.0 - target_axis(k).dot(&propagate_mode(angles, k))
}

/// Rescaled residual energy of the h = 0 antiferromagnetic chain.
///
/// Picks the reduced anti-periodic decomposition when `2P < N` (value is
/// then independent of `N`) and the full periodic chain otherwise. The
/// spectral extremes of the classical chain are `-N` and `+N`.
pub fn residual_energy(angles: &QaoaAngles, chain: &ChainSpec) -> Result<EnergyReport> {
    if chain.field != 0.0 {
        return Err(Error::NonzeroField(chain.field));
    }
    let branch = EvalBranch::select(angles.depth(), chain.n_sites);
    let grid = branch.grid()?;
    let mut eps_sum = 0.0;
    for &k in grid.iter() {
        eps_sum += epsilon_k(angles, k);
    }
    let eps_res = branch.eps_res_from_mode_sum(eps_sum);
    let n = chain.n_sites as f64;
    Ok(EnergyReport::from_eps(eps_res, -n, n))
}

/// Per-mode spectral scale `Lambda_k = sqrt(1 + h^2 + 2 h cos k)`, i.e. the
/// length of the target field `b_k + h z_hat`.
pub fn lambda_k(k: f64, h: f64) -> f64 {
    (1.0 + h * h + 2.0 * h * k.cos()).sqrt()
}

/// Sum of `Lambda_k` over a grid; `E_min = -2 sum`, `E_max = +2 sum`.
pub fn lambda_sum(grid: &KGrid, h: f64) -> f64 {
    grid.iter().map(|&k| lambda_k(k, h)).sum()
}

/// Assemble an [`EnergyReport`] for the transverse-field target from the
/// accumulated mode energy and the spectral scale. Shared with the gradient
/// engine.
pub fn field_report(energy: f64, lambda_sum: f64) -> EnergyReport {
    let bound = 2.0 * lambda_sum;
    EnergyReport::from_energy(energy, -bound, bound)
}

/// Energy and residual of the transverse-field target `H_z + h H_x`,
/// evaluated on a full periodic chain of `n_eval` sites:
/// `E = -2 sum_k (tau_k . b_k + h tau_k . z_hat)`.
///
/// At `h = 0` this reproduces the periodic branch of [`residual_energy`].
/// The field is taken from `chain.field`; `n_eval` sets the evaluation grid
/// (no reduced-chain shortcut is used at finite field).
pub fn energy_expectation(
    angles: &QaoaAngles,
    chain: &ChainSpec,
    n_eval: usize,
) -> Result<EnergyReport> {
    let grid = k_grid(Boundary::Pbc, n_eval)?;
    let h = chain.field;
    let mut energy = 0.0;
    for &k in grid.iter() {
        let tau = propagate_mode(angles, k);
        energy += -2.0 * (tau.dot(&target_axis(k)) + h * tau.z);
    }
    Ok(field_report(energy, lambda_sum(&grid, h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn chain(n: usize) -> ChainSpec {
        ChainSpec::new(n, 0.0).unwrap()
    }

    #[test]
    fn identity_circuit_leaves_modes_on_z() {
        let a = QaoaAngles::zeros(3);
        for k in [0.1, PI / 3.0, PI / 2.0, 2.9] {
            let tau = propagate_mode(&a, k);
            assert_eq!((tau.x, tau.y, tau.z), (0.0, 0.0, 1.0));
        }
    }

    #[test]
    fn depth_one_optimum_reaches_target_axis() {
        // gamma = beta = pi/8 rotates z onto b_{pi/2} = (-1, 0, 0).
        let a = QaoaAngles::new(vec![PI / 8.0], vec![PI / 8.0]).unwrap();
        let tau = propagate_mode(&a, PI / 2.0);
        assert!((tau.x + 1.0).abs() < 1e-15);
        assert!(tau.y.abs() < 1e-15);
        assert!(tau.z.abs() < 1e-15);
        assert!(epsilon_k(&a, PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn epsilon_of_identity_circuit() {
        let a = QaoaAngles::zeros(2);
        assert!((epsilon_k(&a, PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((epsilon_k(&a, PI / 3.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn long_wavelength_modes_cost_nothing() {
        // As k -> 0 the target axis merges with the driver axis, so every
        // rotation fixes z and the mode contributes no cost.
        let a = QaoaAngles::new(vec![0.7, 0.2, 1.1], vec![0.4, 0.9, 0.3]).unwrap();
        assert!(epsilon_k(&a, 1e-8) < 1e-14);
    }

    #[test]
    fn residual_energy_of_identity_circuit_is_half() {
        for p in [1, 2, 5] {
            let report = residual_energy(&QaoaAngles::zeros(p), &chain(50)).unwrap();
            assert!((report.eps_res - 0.5).abs() < 1e-14);
            assert!((report.energy - 0.0).abs() < 1e-12);
        }
    }

    #[test]
    fn depth_one_optimum_saturates_bound() {
        let a = QaoaAngles::new(vec![PI / 8.0], vec![PI / 8.0]).unwrap();
        let report = residual_energy(&a, &chain(50)).unwrap();
        assert!((report.eps_res - 0.25).abs() < 1e-15);
        assert_eq!(report.e_min, -50.0);
        assert_eq!(report.e_max, 50.0);
    }

    #[test]
    fn residual_energy_rejects_finite_field() {
        let c = ChainSpec::new(10, 0.3).unwrap();
        assert!(matches!(
            residual_energy(&QaoaAngles::zeros(1), &c),
            Err(Error::NonzeroField(_))
        ));
    }

    #[test]
    fn expectation_matches_residual_at_zero_field() {
        // Also covers the all-zeros n_eval = 4 example: E = 0, E_min = -4.
        let a = QaoaAngles::zeros(2);
        let report = energy_expectation(&a, &chain(4), 4).unwrap();
        assert!(report.energy.abs() < 1e-15);
        assert!((report.e_min + 4.0).abs() < 1e-12);

        let angles = QaoaAngles::new(vec![0.31, 0.9, 0.12], vec![0.7, 0.05, 0.44]).unwrap();
        for n in [6usize, 10, 14] {
            let full = energy_expectation(&angles, &chain(n), n).unwrap();
            // 2P >= N here, so residual_energy takes the periodic branch.
            let res = residual_energy(&angles, &chain(n)).unwrap();
            assert!((full.eps_res - res.eps_res).abs() < 1e-12);
        }
    }

    #[test]
    fn reduced_chain_value_is_size_independent() {
        let angles = QaoaAngles::new(vec![0.2, 0.8], vec![0.5, 0.1]).unwrap();
        let a = residual_energy(&angles, &chain(50)).unwrap();
        let b = residual_energy(&angles, &chain(52)).unwrap();
        assert!((a.eps_res - b.eps_res).abs() < 1e-14);
    }

    #[test]
    fn branch_selection_rule() {
        assert_eq!(EvalBranch::select(2, 50), EvalBranch::ReducedAbc { n_r: 6 });
        assert_eq!(EvalBranch::select(4, 8), EvalBranch::FullPbc { n: 8 });
        assert_eq!(EvalBranch::select(5, 8), EvalBranch::FullPbc { n: 8 });
    }

    #[test]
    fn lambda_reduces_to_one_at_zero_field() {
        for k in [0.3, 1.1, 2.8] {
            assert_eq!(lambda_k(k, 0.0), 1.0);
        }
        assert!((lambda_k(PI / 3.0, 0.5) - (1.25f64 + 0.5).sqrt()).abs() < 1e-15);
    }
}

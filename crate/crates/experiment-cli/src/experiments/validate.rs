//! Self-validation: oracle equivalence, gradient correctness and the core
//! structural invariants, written as a pass/fail report.

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::fmt_float;
use fermion_core::{
    digitize, energy_expectation, epsilon_k, k_grid, propagate_mode, residual_energy,
    rotate_unchecked, target_axis, undigitize, Boundary, ChainSpec, EvalBranch, QaoaAngles,
    UNIT_Z,
};
use gradient_engine::{finite_diff_gradient, value_and_gradient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schedule_optimizer::canonicalize;
use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::PathBuf;

/// Fault injection for negative-control tests of the validation suite:
/// `FlipDriverRotationSign` reverses the driver rotation handedness, which
/// breaks the circuit/oracle equivalence without touching norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Injection {
    None,
    FlipDriverRotationSign,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ValidateReport {
    pub checks: Vec<Check>,
}

impl ValidateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut text = String::new();
        for check in &self.checks {
            text.push_str(&format!(
                "{} {}: {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            ));
        }
        text.push_str(&format!(
            "{}: {} of {} checks passed\n",
            if self.passed() { "OK" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        text
    }
}

fn random_angles(rng: &mut ChaCha8Rng, p: usize) -> QaoaAngles {
    let gammas = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    let betas = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    QaoaAngles::new(gammas, betas).expect("random angles are valid")
}

/// Residual energy with the optional fault injected; `Injection::None`
/// reproduces the library path bit for bit.
fn eps_res_injected(angles: &QaoaAngles, chain: &ChainSpec, injection: Injection) -> f64 {
    match injection {
        Injection::None => {
            if chain.field == 0.0 {
                residual_energy(angles, chain).expect("valid chain").eps_res
            } else {
                energy_expectation(angles, chain, chain.n_sites)
                    .expect("valid chain")
                    .eps_res
            }
        }
        Injection::FlipDriverRotationSign => {
            let corrupted_tau = |k: f64| {
                let axis = target_axis(k);
                let mut v = UNIT_Z;
                for (&g, &b) in angles.gammas().iter().zip(angles.betas()) {
                    v = rotate_unchecked(&axis, 4.0 * g, &v);
                    v = rotate_unchecked(&UNIT_Z, -4.0 * b, &v);
                }
                v
            };
            if chain.field == 0.0 {
                let branch = EvalBranch::select(angles.depth(), chain.n_sites);
                let grid = branch.grid().expect("valid branch");
                let sum: f64 = grid
                    .iter()
                    .map(|&k| 1.0 - target_axis(k).dot(&corrupted_tau(k)))
                    .sum();
                branch.eps_res_from_mode_sum(sum)
            } else {
                let grid = k_grid(Boundary::Pbc, chain.n_sites).expect("valid grid");
                let h = chain.field;
                let energy: f64 = grid
                    .iter()
                    .map(|&k| {
                        let tau = corrupted_tau(k);
                        -2.0 * (tau.dot(&target_axis(k)) + h * tau.z)
                    })
                    .sum();
                fermion_core::field_report(energy, fermion_core::lambda_sum(&grid, h)).eps_res
            }
        }
    }
}

pub fn check_oracle_equivalence(seed: u64, injection: Injection) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for &n in &[4usize, 6, 8, 10] {
        for p in 1..=5 {
            for _ in 0..50 {
                let angles = random_angles(&mut rng, p);
                for &h in &[0.0, 0.5] {
                    let chain = ChainSpec::new(n, h).expect("valid chain");
                    let fermion = eps_res_injected(&angles, &chain, injection);
                    let ed = ed_oracle::eps_res_ed(&angles, n, h)
                        .expect("within oracle size cap")
                        .eps_res;
                    worst = worst.max((fermion - ed).abs());
                }
            }
        }
    }
    Check {
        name: "oracle-equivalence",
        passed: worst < 1e-10,
        detail: format!("max |eps(fermion) - eps(ed)| = {}", fmt_float(worst)),
    }
}

pub fn check_gradients(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let p = rng.gen_range(1..=16);
        let n = 2 * p + 2 + 2 * rng.gen_range(1..=8);
        let h = if trial % 2 == 0 { 0.0 } else { 0.5 };
        let chain = ChainSpec::new(n, h).expect("valid chain");
        let angles = random_angles(&mut rng, p);
        let (_, grad) = value_and_gradient(&angles, &chain).expect("valid eval");
        let fd = finite_diff_gradient(&angles, &chain, 1e-5).expect("valid eval");
        let scale = grad.norm().max(1e-8);
        for (a, b) in grad.to_flat().iter().zip(fd.to_flat()) {
            worst = worst.max((a - b).abs() / scale);
        }
    }
    Check {
        name: "gradient-vs-finite-difference",
        passed: worst < 1e-6,
        detail: format!("max relative component error = {}", fmt_float(worst)),
    }
}

fn check_invariants(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    let mut checks = Vec::new();

    // Norm conservation of propagated modes.
    let mut worst_norm: f64 = 0.0;
    for _ in 0..30 {
        let p = rng.gen_range(1..=16);
        let angles = random_angles(&mut rng, p);
        for i in 1..10 {
            let k = i as f64 * std::f64::consts::PI / 10.0;
            worst_norm = worst_norm.max((propagate_mode(&angles, k).norm() - 1.0).abs());
        }
    }
    checks.push(Check {
        name: "mode-norm-conservation",
        passed: worst_norm < 1e-12,
        detail: format!("max | |tau| - 1 | = {}", fmt_float(worst_norm)),
    });

    // Half-pi periodicity of the landscape.
    let chain = ChainSpec::new(40, 0.0).expect("valid chain");
    let mut worst_period: f64 = 0.0;
    for _ in 0..20 {
        let p = rng.gen_range(1..=6);
        let angles = random_angles(&mut rng, p);
        let base = residual_energy(&angles, &chain).expect("valid").eps_res;
        let m = rng.gen_range(0..p);
        let mut g = angles.gammas().to_vec();
        g[m] += FRAC_PI_2;
        let shifted = QaoaAngles::new(g, angles.betas().to_vec()).expect("valid");
        let eps = residual_energy(&shifted, &chain).expect("valid").eps_res;
        worst_period = worst_period.max((eps - base).abs());
    }
    checks.push(Check {
        name: "angle-periodicity",
        passed: worst_period < 1e-12,
        detail: format!("max shift effect = {}", fmt_float(worst_period)),
    });

    // Reduced anti-periodic chain equals the full periodic chain.
    let mut worst_reduction: f64 = 0.0;
    for _ in 0..20 {
        let p = rng.gen_range(1..=9);
        let n = 2 * p + 2 + 2 * rng.gen_range(1..=10);
        let chain = ChainSpec::new(n, 0.0).expect("valid chain");
        let angles = random_angles(&mut rng, p);
        let reduced = residual_energy(&angles, &chain).expect("valid").eps_res;
        let full = energy_expectation(&angles, &chain, n).expect("valid").eps_res;
        worst_reduction = worst_reduction.max((reduced - full).abs());
    }
    checks.push(Check {
        name: "reduced-chain-equivalence",
        passed: worst_reduction < 1e-10,
        detail: format!("max |reduced - full| = {}", fmt_float(worst_reduction)),
    });

    // Variational bound.
    let chain = ChainSpec::new(60, 0.0).expect("valid chain");
    let mut worst_bound: f64 = 0.0;
    for _ in 0..100 {
        let p = rng.gen_range(1..=12);
        let angles = random_angles(&mut rng, p);
        let eps = residual_energy(&angles, &chain).expect("valid").eps_res;
        worst_bound = worst_bound.max(1.0 / (2.0 * p as f64 + 2.0) - eps);
    }
    checks.push(Check {
        name: "variational-bound",
        passed: worst_bound < 1e-12,
        detail: format!("max bound violation = {}", fmt_float(worst_bound)),
    });

    // Canonicalization preserves the residual energy.
    let mut worst_canon: f64 = 0.0;
    for _ in 0..20 {
        let p = rng.gen_range(1..=8);
        let gammas: Vec<f64> = (0..p).map(|_| (rng.gen::<f64>() - 0.5) * 8.0).collect();
        let betas: Vec<f64> = (0..p).map(|_| (rng.gen::<f64>() - 0.5) * 8.0).collect();
        let angles = QaoaAngles::new(gammas, betas).expect("valid");
        let before = residual_energy(&angles, &chain).expect("valid").eps_res;
        let after = residual_energy(&canonicalize(&angles), &chain)
            .expect("valid")
            .eps_res;
        worst_canon = worst_canon.max((before - after).abs());
    }
    checks.push(Check {
        name: "canonicalization-preserves-energy",
        passed: worst_canon < 1e-12,
        detail: format!("max energy change = {}", fmt_float(worst_canon)),
    });

    // Digitization round trip.
    let mut worst_round: f64 = 0.0;
    for _ in 0..20 {
        let p = rng.gen_range(1..=8);
        let s: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * 0.98 + 0.01).collect();
        let dt: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * 1.5 + 0.1).collect();
        for h in [0.0, 0.5] {
            let angles = digitize(&s, &dt, h).expect("valid schedule");
            let (s2, dt2) = undigitize(&angles, h);
            for i in 0..p {
                worst_round = worst_round.max((s[i] - s2[i]).abs().max((dt[i] - dt2[i]).abs()));
            }
        }
    }
    checks.push(Check {
        name: "digitize-round-trip",
        passed: worst_round < 1e-12,
        detail: format!("max round-trip error = {}", fmt_float(worst_round)),
    });

    // Local-adiabatic schedule midpoint symmetry (exact).
    let mut midpoint_exact = true;
    for &(tau, gap) in &[(8.0f64, 0.2f64), (32.0, 0.5)] {
        let rc = continuous_dynamics::roland_cerf_schedule(tau, gap).expect("valid schedule");
        midpoint_exact &= rc.value(tau / 2.0) == 0.5;
    }
    checks.push(Check {
        name: "local-adiabatic-midpoint",
        passed: midpoint_exact,
        detail: "s(tau/2) == 1/2 exactly".to_string(),
    });

    // Identity-circuit epsilon values.
    let zeros = QaoaAngles::zeros(2);
    let eps_mid = epsilon_k(&zeros, std::f64::consts::FRAC_PI_2);
    checks.push(Check {
        name: "identity-circuit-epsilon",
        passed: (eps_mid - 1.0).abs() < 1e-15,
        detail: format!("eps_k(0; pi/2) = {}", fmt_float(eps_mid)),
    });

    checks
}

pub fn run_checks(seed: u64, injection: Injection) -> ValidateReport {
    let mut checks = vec![check_oracle_equivalence(seed, injection)];
    checks.push(check_gradients(seed));
    checks.extend(check_invariants(seed));
    ValidateReport { checks }
}

pub fn run(cfg: &RunConfig) -> Result<(Vec<PathBuf>, bool)> {
    let report = run_checks(cfg.seed, Injection::None);
    std::fs::create_dir_all(&cfg.out_dir)?;
    let path = cfg.out_dir.join("validate_report.txt");
    let mut file = std::fs::File::create(&path)?;
    write!(file, "config_hash {}\n{}", cfg.hash(), report.render())?;
    Ok((vec![path], report.passed()))
}

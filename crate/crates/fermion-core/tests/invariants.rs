//! Structural invariants of the per-mode evaluation, checked over seeded
//! random angle sets.

use fermion_core::{
    energy_expectation, propagate_mode, residual_energy, ChainSpec, QaoaAngles,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn random_angles(rng: &mut ChaCha8Rng, p: usize) -> QaoaAngles {
    let gammas = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    let betas = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    QaoaAngles::new(gammas, betas).unwrap()
}

#[test]
fn propagation_preserves_unit_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let p = rng.gen_range(1..=16);
        let angles = random_angles(&mut rng, p);
        for i in 1..20 {
            let k = i as f64 * PI / 20.0;
            let tau = propagate_mode(&angles, k);
            assert!((tau.norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn residual_energy_independent_of_chain_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let p = rng.gen_range(1..=8);
        let angles = random_angles(&mut rng, p);
        let small = ChainSpec::new(2 * p + 4, 0.0).unwrap();
        let large = ChainSpec::new(2 * p + 6, 0.0).unwrap();
        let a = residual_energy(&angles, &small).unwrap();
        let b = residual_energy(&angles, &large).unwrap();
        assert!((a.eps_res - b.eps_res).abs() < 1e-14);
    }
}

#[test]
fn residual_energy_periodic_in_each_angle() {
    // Rotation angles are 4*gamma and 4*beta, so shifting any single
    // component by pi/2 shifts its rotation by a full turn.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let chain = ChainSpec::new(40, 0.0).unwrap();
    for _ in 0..20 {
        let p = rng.gen_range(1..=6);
        let angles = random_angles(&mut rng, p);
        let base = residual_energy(&angles, &chain).unwrap().eps_res;
        let m = rng.gen_range(0..p);

        let mut g = angles.gammas().to_vec();
        g[m] += FRAC_PI_2;
        let shifted = QaoaAngles::new(g, angles.betas().to_vec()).unwrap();
        assert!((residual_energy(&shifted, &chain).unwrap().eps_res - base).abs() < 1e-12);

        let mut b = angles.betas().to_vec();
        b[m] += FRAC_PI_2;
        let shifted = QaoaAngles::new(angles.gammas().to_vec(), b).unwrap();
        assert!((residual_energy(&shifted, &chain).unwrap().eps_res - base).abs() < 1e-12);
    }
}

#[test]
fn reduced_chain_matches_full_periodic_chain() {
    // The anti-periodic reduced-chain decomposition reproduces the full-chain
    // residual energy for 2P < N, for arbitrary angles.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for &n in &[20usize, 50, 74] {
        let chain = ChainSpec::new(n, 0.0).unwrap();
        for _ in 0..20 {
            let p = rng.gen_range(1..=(n / 2 - 1).min(9));
            let angles = random_angles(&mut rng, p);
            let reduced = residual_energy(&angles, &chain).unwrap().eps_res;
            let full = energy_expectation(&angles, &chain, n).unwrap().eps_res;
            assert!(
                (reduced - full).abs() < 1e-10,
                "n={n} p={p}: reduced {reduced} vs full {full}"
            );
        }
    }
}

#[test]
fn residual_energy_respects_lower_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let chain = ChainSpec::new(60, 0.0).unwrap();
    for _ in 0..200 {
        let p = rng.gen_range(1..=12);
        let angles = random_angles(&mut rng, p);
        let eps = residual_energy(&angles, &chain).unwrap().eps_res;
        let bound = 1.0 / (2.0 * p as f64 + 2.0);
        assert!(eps >= bound - 1e-12, "p={p}: eps {eps} below bound {bound}");
        assert!(eps <= 1.0 + 1e-12);
    }
}

//! Gradient correctness against the central finite-difference oracle over
//! random angle sets, both field values, and the second-order convergence
//! of the differences themselves.

use fermion_core::{ChainSpec, QaoaAngles};
use gradient_engine::{finite_diff_gradient, value_and_gradient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

fn random_angles(rng: &mut ChaCha8Rng, p: usize) -> QaoaAngles {
    let gammas = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    let betas = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    QaoaAngles::new(gammas, betas).unwrap()
}

fn max_rel_error(analytic: &gradient_engine::Gradient, fd: &gradient_engine::Gradient) -> f64 {
    let scale = analytic.norm().max(1e-8);
    analytic
        .to_flat()
        .iter()
        .zip(fd.to_flat())
        .map(|(a, f)| (a - f).abs() / scale)
        .fold(0.0, f64::max)
}

#[test]
fn matches_finite_differences_over_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for &h in &[0.0, 0.5] {
        for trial in 0..100 {
            let p = rng.gen_range(1..=16);
            let n = (2 * p + 2 + rng.gen_range(1..=10) * 2).max(8);
            let chain = ChainSpec::new(n, h).unwrap();
            let angles = random_angles(&mut rng, p);
            let (_, grad) = value_and_gradient(&angles, &chain).unwrap();
            let fd = finite_diff_gradient(&angles, &chain, 1e-5).unwrap();
            let err = max_rel_error(&grad, &fd);
            assert!(
                err < 1e-6,
                "trial {trial}: h={h} p={p} n={n} rel err {err:.3e}"
            );
        }
    }
}

#[test]
fn dense_chain_case_matches() {
    // Fixed sizeable case: depth 8 on a 100-site chain.
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let chain = ChainSpec::new(100, 0.0).unwrap();
    let angles = random_angles(&mut rng, 8);
    let (_, grad) = value_and_gradient(&angles, &chain).unwrap();
    let fd = finite_diff_gradient(&angles, &chain, 1e-5).unwrap();
    assert!(max_rel_error(&grad, &fd) < 1e-6);
}

#[test]
fn fd_error_shrinks_quadratically() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let chain = ChainSpec::new(30, 0.0).unwrap();
    let angles = random_angles(&mut rng, 4);
    let (_, grad) = value_and_gradient(&angles, &chain).unwrap();

    let err_at = |step: f64| {
        let fd = finite_diff_gradient(&angles, &chain, step).unwrap();
        grad.to_flat()
            .iter()
            .zip(fd.to_flat())
            .map(|(a, f)| (a - f).abs())
            .fold(0.0, f64::max)
    };
    let e1 = err_at(1e-3);
    let e2 = err_at(5e-4);
    // Central differences are second order: halving the step should shrink
    // the error by about 4; allow generous slack for higher-order terms.
    let ratio = e1 / e2;
    assert!(
        (2.5..6.0).contains(&ratio),
        "expected ~4x error reduction, got {ratio} (e1={e1:.3e}, e2={e2:.3e})"
    );
}

#[test]
fn gradient_invariant_under_half_pi_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let chain = ChainSpec::new(40, 0.0).unwrap();
    for _ in 0..10 {
        let p = rng.gen_range(1..=6);
        let angles = random_angles(&mut rng, p);
        let (_, base) = value_and_gradient(&angles, &chain).unwrap();

        let m = rng.gen_range(0..p);
        let mut g = angles.gammas().to_vec();
        g[m] += FRAC_PI_2;
        let shifted = QaoaAngles::new(g, angles.betas().to_vec()).unwrap();
        let (_, shifted_grad) = value_and_gradient(&shifted, &chain).unwrap();
        for (a, b) in base.to_flat().iter().zip(shifted_grad.to_flat()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

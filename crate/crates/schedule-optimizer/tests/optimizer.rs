//! End-to-end behaviour of the minimizer, the degeneracy enumeration, and
//! the regular-schedule ladder.

use fermion_core::{residual_energy, schedule_duration, undigitize, ChainSpec, QaoaAngles};
use schedule_optimizer::{
    canonicalize, cost_accounting, enumerate_minima, minimize, regular_schedule, OptimOptions,
};
use std::f64::consts::PI;

fn chain50() -> ChainSpec {
    ChainSpec::new(50, 0.0).unwrap()
}

#[test]
fn stationary_start_returns_immediately() {
    let optimum = QaoaAngles::new(vec![PI / 8.0], vec![PI / 8.0]).unwrap();
    let result = minimize(&optimum, &chain50(), &OptimOptions::default()).unwrap();
    assert!(result.converged);
    assert!(result.n_iterations <= 1);
    assert!((result.eps_res - 0.25).abs() < 1e-12);
    assert_eq!(result.angles.gammas()[0], PI / 8.0);
}

#[test]
fn depth_one_converges_to_analytic_pair() {
    let initial = QaoaAngles::new(vec![0.3], vec![0.3]).unwrap();
    let result = minimize(&initial, &chain50(), &OptimOptions::default()).unwrap();
    assert!(result.converged, "grad_norm = {}", result.grad_norm);
    assert!((result.eps_res - 0.25).abs() < 1e-10);

    let canon = canonicalize(&result.angles);
    let (g, b) = (canon.gammas()[0], canon.betas()[0]);
    let near = |x: f64, t: f64| (x - t).abs() < 1e-6;
    assert!(
        (near(g, PI / 8.0) && near(b, PI / 8.0))
            || (near(g, 3.0 * PI / 8.0) && near(b, 3.0 * PI / 8.0)),
        "unexpected canonical minimum ({g}, {b})"
    );
}

#[test]
fn descent_never_increases_objective() {
    let initial = QaoaAngles::new(vec![0.1, 1.2, 0.4], vec![0.9, 0.05, 1.4]).unwrap();
    let f0 = residual_energy(&initial, &chain50()).unwrap().eps_res;
    let result = minimize(&initial, &chain50(), &OptimOptions::default()).unwrap();
    assert!(result.eps_res <= f0 + 1e-15);
    assert!(result.converged);
    let bound = 1.0 / 8.0;
    assert!(result.eps_res >= bound - 1e-12);
}

#[test]
fn degeneracy_count_is_two_at_depth_one() {
    let set = enumerate_minima(1, &chain50(), 60, 7, 1e-4, &OptimOptions::default()).unwrap();
    assert_eq!(set.minima.len(), 2, "cluster sizes {:?}", set.cluster_sizes);
    let mut gs: Vec<f64> = set.minima.iter().map(|m| m.angles.gammas()[0]).collect();
    gs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((gs[0] - PI / 8.0).abs() < 1e-6);
    assert!((gs[1] - 3.0 * PI / 8.0).abs() < 1e-6);
}

#[test]
fn degeneracy_count_is_four_at_depth_two() {
    let set = enumerate_minima(2, &chain50(), 150, 11, 1e-4, &OptimOptions::default()).unwrap();
    assert_eq!(set.minima.len(), 4, "cluster sizes {:?}", set.cluster_sizes);
    for m in &set.minima {
        assert!((m.eps_res - 1.0 / 6.0).abs() < 1e-7);
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a = enumerate_minima(2, &chain50(), 40, 3, 1e-4, &OptimOptions::default()).unwrap();
    let b = enumerate_minima(2, &chain50(), 40, 3, 1e-4, &OptimOptions::default()).unwrap();
    assert_eq!(a.minima.len(), b.minima.len());
    for (x, y) in a.minima.iter().zip(&b.minima) {
        assert_eq!(x.angles, y.angles);
        assert_eq!(x.eps_res, y.eps_res);
        assert_eq!(x.n_iterations, y.n_iterations);
    }
}

#[test]
fn regular_ladder_saturates_and_orders_schedule() {
    let chain = ChainSpec::new(100, 0.0).unwrap();
    let ladder = regular_schedule(8, &chain, &OptimOptions::default()).unwrap();
    assert_eq!(ladder.levels.len(), 3); // P = 2, 4, 8

    for level in &ladder.levels {
        let p = level.depth();
        let bound = 1.0 / (2.0 * p as f64 + 2.0);
        assert_eq!(level.saturated, Some(true));
        assert!(
            (level.result.eps_res - bound).abs() < 1e-7,
            "P={p}: {} vs {bound}",
            level.result.eps_res
        );
        // The schedule parameters must increase strictly with the layer.
        let s = level.schedule_values(0.0);
        for w in s.windows(2) {
            assert!(w[0] < w[1], "P={p}: s not strictly increasing: {s:?}");
        }
        // All layer durations positive.
        let (_, dt) = undigitize(&level.result.angles, 0.0);
        assert!(dt.iter().all(|&d| d > 0.0));
    }

    // Known duration of the depth-8 regular optimum.
    let tau = schedule_duration(&ladder.final_level().result.angles, 0.0);
    assert!((tau - 9.76).abs() < 0.05, "tau = {tau}");
}

#[test]
fn lowest_level_tracks_linear_schedule() {
    // The depth-2 regular solution nearly coincides with the digitized
    // linear schedule it starts from.
    let chain = ChainSpec::new(100, 0.0).unwrap();
    let ladder = regular_schedule(2, &chain, &OptimOptions::default()).unwrap();
    let s = ladder.final_level().schedule_values(0.0);
    assert!((s[0] - 1.0 / 3.0).abs() < 0.05, "s_1 = {}", s[0]);
    assert!((s[1] - 2.0 / 3.0).abs() < 0.05, "s_2 = {}", s[1]);
}

#[test]
fn plain_interpolation_seeds_next_depth() {
    // Doubling from the depth-2 optimum through piecewise-linear
    // interpolation alone is a good enough start to reach the depth-4
    // bound.
    let chain = ChainSpec::new(100, 0.0).unwrap();
    let opts = OptimOptions::default();
    let ladder = regular_schedule(2, &chain, &opts).unwrap();
    let guess =
        schedule_optimizer::interpolate_angles(&ladder.final_level().result.angles, 4).unwrap();
    let result = minimize(&guess, &chain, &opts).unwrap();
    assert!(result.converged);
    assert!((result.eps_res - 0.1).abs() < 1e-7, "eps = {}", result.eps_res);
}

#[test]
fn ladder_residuals_decrease_with_depth() {
    let chain = ChainSpec::new(100, 0.0).unwrap();
    let ladder = regular_schedule(16, &chain, &OptimOptions::default()).unwrap();
    for pair in ladder.levels.windows(2) {
        assert!(pair[1].result.eps_res < pair[0].result.eps_res);
    }
    let rows = cost_accounting(
        &ladder
            .levels
            .iter()
            .map(|l| l.result.clone())
            .collect::<Vec<_>>(),
    );
    assert_eq!(rows.len(), 4);
    assert!(rows.windows(2).all(|w| w[1].cumulative_t_cc > w[0].cumulative_t_cc));
}

#[test]
fn serialized_result_uses_contract_keys() {
    let result = minimize(
        &QaoaAngles::new(vec![0.3], vec![0.3]).unwrap(),
        &chain50(),
        &OptimOptions::default(),
    )
    .unwrap();
    let js = serde_json::to_value(&result).unwrap();
    for key in [
        "p",
        "gammas",
        "betas",
        "eps_res",
        "grad_norm",
        "n_iterations",
        "n_evaluations",
        "converged",
    ] {
        assert!(js.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(js["p"], 1);
}

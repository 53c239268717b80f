//! Cross-checks of the continuous integrator: against the dense many-body
//! Schrödinger evolution, against its own refinement, and against the
//! digitized circuit in the small-step limit.

use continuous_dynamics::{bloch_evolve, default_dt_step, step_discretize, AnnealSchedule};
use fermion_core::{digitize, residual_energy, ChainSpec};

/// The per-mode precession `d tau/dt = 4 tau x c(s)` must reproduce the
/// exact Schrödinger dynamics of the full spin chain. An error in the
/// factor 4 or in the field composition would show up at the 1e-1 level
/// here; the integrators agree to their own accuracy instead.
#[test]
fn bloch_precession_matches_dense_schrodinger_evolution() {
    let tau = 4.0;
    for &h in &[0.0, 0.5] {
        let chain = ChainSpec::new(8, h).unwrap();
        let schedule = AnnealSchedule::linear(tau).unwrap();
        let bloch = bloch_evolve(&schedule, &chain, 1e-3).unwrap().report;
        let dense = ed_oracle::anneal_evolve(|t| t / tau, tau, 8, h, 4000).unwrap();
        assert!(
            (bloch.eps_res - dense.eps_res).abs() < 1e-6,
            "h={h}: bloch {} vs dense {}",
            bloch.eps_res,
            dense.eps_res
        );
    }
}

#[test]
fn refining_the_step_changes_nothing_measurable() {
    let chain = ChainSpec::new(64, 0.0).unwrap();
    let schedule = AnnealSchedule::linear(32.0).unwrap();
    let d0 = default_dt_step(32.0);
    let full = bloch_evolve(&schedule, &chain, d0).unwrap().report.eps_res;
    let half = bloch_evolve(&schedule, &chain, d0 / 2.0).unwrap().report.eps_res;
    assert!((full - half).abs() < 1e-8, "delta {}", (full - half).abs());
}

#[test]
fn fine_digitization_converges_to_continuous_dynamics() {
    let tau = 16.0;
    let n = 64;
    let chain = ChainSpec::new(n, 0.0).unwrap();
    let schedule = AnnealSchedule::linear(tau).unwrap();
    let continuous = bloch_evolve(&schedule, &chain, default_dt_step(tau))
        .unwrap()
        .report
        .eps_res;

    let steps = step_discretize(&schedule, 0.01).unwrap();
    let (s_values, dt_values) = match &steps {
        AnnealSchedule::PiecewiseConstant { s_values, dt_values } => {
            (s_values.clone(), dt_values.clone())
        }
        _ => unreachable!(),
    };
    let angles = digitize(&s_values, &dt_values, 0.0).unwrap();
    let digitized = residual_energy(&angles, &chain).unwrap().eps_res;

    assert!(
        (continuous - digitized).abs() < 1e-4,
        "continuous {continuous} vs digitized {digitized}"
    );
}

#[test]
fn coarse_digitization_tracks_continuous_at_unit_step() {
    // At unit steps the digitized sweep stays within a few percent of the
    // continuous one over a moderate tau.
    let tau = 32.0;
    let chain = ChainSpec::new(128, 0.0).unwrap();
    let schedule = AnnealSchedule::linear(tau).unwrap();
    let continuous = bloch_evolve(&schedule, &chain, default_dt_step(tau))
        .unwrap()
        .report
        .eps_res;
    let steps = step_discretize(&schedule, 1.0).unwrap();
    let (s_values, dt_values) = match &steps {
        AnnealSchedule::PiecewiseConstant { s_values, dt_values } => {
            (s_values.clone(), dt_values.clone())
        }
        _ => unreachable!(),
    };
    let angles = digitize(&s_values, &dt_values, 0.0).unwrap();
    let digitized = residual_energy(&angles, &chain).unwrap().eps_res;
    assert!(
        (continuous - digitized).abs() < 0.3 * continuous,
        "continuous {continuous} vs digitized {digitized}"
    );
}

//! Residual-energy scaling of the annealing baselines against the optimal
//! digitized schedule: continuous and digitized linear sweeps, per-tau
//! tuned Roland-Cerf sweeps, and the regular ladder with its duration from
//! the sum rule.

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{write_json, CsvWriter, Field};
use continuous_dynamics::{
    bloch_evolve, default_dt_step, roland_cerf_schedule, scaling_fit, step_discretize,
    AnnealSchedule, ScalingFit,
};
use fermion_core::{digitize, residual_energy, schedule_duration, ChainSpec};
use schedule_optimizer::{regular_schedule, OptimOptions, RegularLadder};
use serde_json::json;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct CompareParams {
    pub n: usize,
    pub tau_list: Vec<f64>,
    pub dt: f64,
    pub p_ladder: usize,
    pub gap_grid: Vec<f64>,
}

impl CompareParams {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        Ok(Self {
            n: cfg.get_usize("n", 1024)?,
            tau_list: cfg.get_f64_list(
                "tau_list",
                &[8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0],
            )?,
            dt: cfg.get_f64("dt", 1.0)?,
            p_ladder: cfg.get_usize("p_ladder", 512)?,
            gap_grid: cfg.get_f64_list("gap_grid", &[0.05, 0.1, 0.2, 0.4, 0.8])?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub schedule: &'static str,
    pub tau: f64,
    /// Number of digital steps; 0 for continuous evolution.
    pub p: usize,
    pub dt: f64,
    pub eps_res: f64,
}

#[derive(Debug)]
pub struct BaselineResults {
    pub points: Vec<CurvePoint>,
    pub linear_qa: Vec<(f64, f64)>,
    pub linear_dqa: Vec<(f64, f64)>,
    pub rc_qa: Vec<(f64, f64)>,
    pub rc_dqa: Vec<(f64, f64)>,
    pub rc_gap_by_tau: Vec<(f64, f64)>,
}

fn digitized_eps(schedule: &AnnealSchedule, dt: f64, chain: &ChainSpec) -> Result<f64> {
    let steps = step_discretize(schedule, dt)?;
    let AnnealSchedule::PiecewiseConstant { s_values, dt_values } = &steps else {
        unreachable!("step_discretize returns a piecewise schedule");
    };
    let angles = digitize(s_values, dt_values, chain.field)?;
    Ok(residual_energy(&angles, chain)?.eps_res)
}

/// A residual-energy curve: `(tau, eps_res)` samples.
pub type Curve = Vec<(f64, f64)>;

/// Continuous and digitized linear sweeps over the tau grid.
pub fn compute_linear(params: &CompareParams) -> Result<(Curve, Curve)> {
    let chain = ChainSpec::new(params.n, 0.0)?;
    let mut linear_qa = Vec::new();
    let mut linear_dqa = Vec::new();
    for &tau in &params.tau_list {
        let linear = AnnealSchedule::linear(tau)?;
        let eps = bloch_evolve(&linear, &chain, default_dt_step(tau))?.report.eps_res;
        linear_qa.push((tau, eps));
        linear_dqa.push((tau, digitized_eps(&linear, params.dt, &chain)?));
    }
    Ok((linear_qa, linear_dqa))
}

/// Local-adiabatic sweeps with the gap floor tuned per tau over the coarse
/// grid (continuous and digitized tuned independently). Returns
/// `(rc_qa, rc_dqa, gap_by_tau)`.
pub fn compute_rc(params: &CompareParams) -> Result<(Curve, Curve, Curve)> {
    let chain = ChainSpec::new(params.n, 0.0)?;
    let mut rc_qa = Vec::new();
    let mut rc_dqa = Vec::new();
    let mut rc_gap_by_tau = Vec::new();
    for &tau in &params.tau_list {
        let dt_step = default_dt_step(tau);
        let mut best_qa = f64::INFINITY;
        let mut best_gap = params.gap_grid[0];
        let mut best_dqa = f64::INFINITY;
        for &gap in &params.gap_grid {
            let rc = roland_cerf_schedule(tau, gap)?;
            let eps_qa = bloch_evolve(&rc, &chain, dt_step)?.report.eps_res;
            if eps_qa < best_qa {
                best_qa = eps_qa;
                best_gap = gap;
            }
            let eps_dqa = digitized_eps(&rc, params.dt, &chain)?;
            if eps_dqa < best_dqa {
                best_dqa = eps_dqa;
            }
        }
        rc_qa.push((tau, best_qa));
        rc_dqa.push((tau, best_dqa));
        rc_gap_by_tau.push((tau, best_gap));
    }
    Ok((rc_qa, rc_dqa, rc_gap_by_tau))
}

pub fn compute_baselines(params: &CompareParams) -> Result<BaselineResults> {
    let (linear_qa, linear_dqa) = compute_linear(params)?;
    let (rc_qa, rc_dqa, rc_gap_by_tau) = compute_rc(params)?;

    let mut points = Vec::new();
    for (i, &tau) in params.tau_list.iter().enumerate() {
        let dt_step = default_dt_step(tau);
        let p_digital = (tau / params.dt).round() as usize;
        points.push(CurvePoint {
            schedule: "linear-qa",
            tau,
            p: 0,
            dt: dt_step,
            eps_res: linear_qa[i].1,
        });
        points.push(CurvePoint {
            schedule: "linear-dqa",
            tau,
            p: p_digital,
            dt: params.dt,
            eps_res: linear_dqa[i].1,
        });
        points.push(CurvePoint {
            schedule: "rc-qa",
            tau,
            p: 0,
            dt: dt_step,
            eps_res: rc_qa[i].1,
        });
        points.push(CurvePoint {
            schedule: "rc-dqa",
            tau,
            p: p_digital,
            dt: params.dt,
            eps_res: rc_dqa[i].1,
        });
    }

    Ok(BaselineResults {
        points,
        linear_qa,
        linear_dqa,
        rc_qa,
        rc_dqa,
        rc_gap_by_tau,
    })
}

/// Regular ladder for the optimal-dQA curve. The bound-regime landscape is
/// size-independent, so a chain just above `2 p_ladder` stands in for the
/// infinite chain.
pub fn compute_ladder(p_ladder: usize, opts: &OptimOptions) -> Result<RegularLadder> {
    let chain = ChainSpec::new(2 * p_ladder + 4, 0.0)?;
    Ok(regular_schedule(p_ladder, &chain, opts)?)
}

/// `(tau, eps_res)` for every ladder level, tau from the sum rule.
pub fn ladder_points(ladder: &RegularLadder) -> Vec<(f64, f64)> {
    ladder
        .levels
        .iter()
        .map(|level| {
            (
                schedule_duration(&level.result.angles, 0.0),
                level.result.eps_res,
            )
        })
        .collect()
}

/// Log-log window covering the upper geometric half of a curve's tau range.
pub fn upper_half_window(points: &[(f64, f64)]) -> (f64, f64) {
    let tau_min = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let tau_max = points.iter().map(|p| p.0).fold(0.0, f64::max);
    ((tau_min * tau_max).sqrt(), tau_max)
}

fn fit_json(fit: &ScalingFit) -> serde_json::Value {
    json!({
        "exponent": fit.exponent,
        "prefactor": fit.prefactor,
        "r_squared": fit.r_squared,
        "window": [fit.fit_window.0, fit.fit_window.1],
        "recip": { "a": fit.recip.a, "b": fit.recip.b, "r_squared": fit.recip.r_squared },
    })
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = CompareParams::from_config(cfg)?;
    let results = compute_baselines(&params)?;
    let ladder = compute_ladder(params.p_ladder, &OptimOptions::default())?;
    let optimal = ladder_points(&ladder);
    let hash = cfg.hash();

    let csv_path = cfg.out_dir.join("compare_schedules.csv");
    let mut csv = CsvWriter::create(&csv_path, &["schedule_name", "tau", "p", "dt", "eps_res"], &hash)?;
    let ladder_curve_points: Vec<CurvePoint> = optimal
        .iter()
        .zip(&ladder.levels)
        .map(|(&(tau, eps_res), level)| CurvePoint {
            schedule: "optimal-dqa",
            tau,
            p: level.depth(),
            dt: tau / level.depth() as f64,
            eps_res,
        })
        .collect();
    for pt in results.points.iter().chain(ladder_curve_points.iter()) {
        csv.write_row(&[
            Field::Str(pt.schedule.to_string()),
            Field::Float(pt.tau),
            Field::UInt(pt.p as u64),
            Field::Float(pt.dt),
            Field::Float(pt.eps_res),
        ])?;
    }
    let csv_path = csv.finish()?;

    let full = (
        params.tau_list.iter().copied().fold(f64::INFINITY, f64::min),
        params.tau_list.iter().copied().fold(0.0, f64::max),
    );
    let lin_qa_fit = scaling_fit(&results.linear_qa, full)?;
    let lin_dqa_fit = scaling_fit(&results.linear_dqa, full)?;
    let rc_qa_fit = scaling_fit(&results.rc_qa, full)?;
    let rc_dqa_fit = scaling_fit(&results.rc_dqa, full)?;
    let opt_all = scaling_fit(&optimal, (0.0, f64::INFINITY))?;
    // Shallow ladders leave too few points above the geometric midpoint for
    // a slope estimate; report null rather than failing the run.
    let upper_window = upper_half_window(&optimal);
    let opt_upper = scaling_fit(&optimal, upper_window).ok();

    let json_path = write_json(
        &cfg.out_dir.join("compare_fits.json"),
        &json!({
            "config_hash": hash,
            "n": params.n,
            "linear_qa": fit_json(&lin_qa_fit),
            "linear_dqa": fit_json(&lin_dqa_fit),
            "rc_qa": fit_json(&rc_qa_fit),
            "rc_dqa": fit_json(&rc_dqa_fit),
            "rc_gap_by_tau": results.rc_gap_by_tau,
            "optimal_dqa": {
                "recip": {
                    "a": opt_all.recip.a,
                    "b": opt_all.recip.b,
                    "r_squared": opt_all.recip.r_squared,
                },
                "upper_half_exponent": opt_upper.as_ref().map(|f| f.exponent),
                "upper_half_window": [upper_window.0, upper_window.1],
            },
        }),
    )?;

    Ok(vec![csv_path, json_path])
}

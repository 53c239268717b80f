//! Construct the regular schedule ladder, report its schedules, durations
//! and iteration costs, and compare against seeded random-start searches at
//! the final depth.

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{write_json, CsvWriter, Field};
use fermion_core::{schedule_duration, undigitize, ChainSpec, QaoaAngles};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schedule_optimizer::{cost_accounting, minimize, regular_schedule, OptimOptions, RegularLadder};
use serde_json::json;
use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct RegularParams {
    pub n: usize,
    pub p_target: usize,
    pub h: f64,
    pub n_random_starts: usize,
}

impl RegularParams {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        Ok(Self {
            n: cfg.get_usize("n", 260)?,
            p_target: cfg.get_usize("p_target", 64)?,
            h: cfg.get_f64("h", 0.0)?,
            n_random_starts: cfg.get_usize("n_random_starts", 8)?,
        })
    }
}

pub fn build_ladder(params: &RegularParams, opts: &OptimOptions) -> Result<RegularLadder> {
    let chain = ChainSpec::new(params.n, params.h)?;
    Ok(regular_schedule(params.p_target, &chain, opts)?)
}

/// Mean iteration count of seeded random-start searches at depth `p`.
pub fn random_start_iterations(
    p: usize,
    chain: &ChainSpec,
    n_starts: usize,
    seed: u64,
    opts: &OptimOptions,
) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations = Vec::with_capacity(n_starts);
    for _ in 0..n_starts {
        let gammas: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
        let betas: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
        let result = minimize(&QaoaAngles::new(gammas, betas)?, chain, opts)?;
        iterations.push(result.n_iterations);
    }
    Ok(iterations)
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = RegularParams::from_config(cfg)?;
    let opts = OptimOptions::default();
    let ladder = build_ladder(&params, &opts)?;
    let hash = cfg.hash();

    // Per-layer schedule of every level.
    let csv_path = cfg.out_dir.join("regular_schedule.csv");
    let mut csv = CsvWriter::create(
        &csv_path,
        &["p", "m", "s_m", "t_mid", "gamma", "beta"],
        &hash,
    )?;
    for level in &ladder.levels {
        let angles = &level.result.angles;
        let (s, dt) = undigitize(angles, params.h);
        let mut t_accum = 0.0;
        for m in 0..angles.depth() {
            let t_mid = t_accum + 0.5 * dt[m];
            t_accum += dt[m];
            csv.write_row(&[
                Field::UInt(angles.depth() as u64),
                Field::UInt((m + 1) as u64),
                Field::Float(s[m]),
                Field::Float(t_mid),
                Field::Float(angles.gammas()[m]),
                Field::Float(angles.betas()[m]),
            ])?;
        }
    }
    let csv_path = csv.finish()?;

    // Level summaries, cost accounting, random-start baseline.
    let results: Vec<_> = ladder.levels.iter().map(|l| l.result.clone()).collect();
    let costs = cost_accounting(&results);
    let random_iters = random_start_iterations(
        params.p_target,
        &ladder.chain,
        params.n_random_starts,
        cfg.seed,
        &opts,
    )?;
    let random_mean =
        random_iters.iter().sum::<usize>() as f64 / random_iters.len().max(1) as f64;

    let levels_json: Vec<serde_json::Value> = ladder
        .levels
        .iter()
        .zip(&costs)
        .map(|(level, cost)| {
            json!({
                "result": level.result,
                "saturated": level.saturated,
                "tau": schedule_duration(&level.result.angles, params.h),
                "t_cc": cost.t_cc,
                "cumulative_t_cc": cost.cumulative_t_cc,
            })
        })
        .collect();
    let json_path = write_json(
        &cfg.out_dir.join("regular_levels.json"),
        &json!({
            "config_hash": hash,
            "n": params.n,
            "h": params.h,
            "levels": levels_json,
            "cumulative_iterations": results.iter().map(|r| r.n_iterations).sum::<usize>(),
            "random_start": {
                "p": params.p_target,
                "n_starts": params.n_random_starts,
                "iterations": random_iters,
                "mean_iterations": random_mean,
            },
        }),
    )?;

    Ok(vec![csv_path, json_path])
}

//! Rescaled-schedule collapse of the regular ladder, with irregular
//! random-start solutions as the negative control.

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{write_json, CsvWriter, Field};
use continuous_dynamics::{collapse_distance, collapse_transform, CollapseCurve, CENTRAL_WINDOW};
use fermion_core::{ChainSpec, QaoaAngles};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schedule_optimizer::{minimize, regular_schedule, OptimOptions, OptimResult};
use serde_json::json;
use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct CollapseParams {
    pub n: usize,
    pub p_target: usize,
    pub pair: (usize, usize),
    pub include_irregular: bool,
}

impl CollapseParams {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        let pair = cfg.get_usize_list("pair", &[8, 16])?;
        Ok(Self {
            n: cfg.get_usize("n", 260)?,
            p_target: cfg.get_usize("p_target", 64)?,
            pair: (pair[0], pair[1]),
            include_irregular: cfg.get_usize("include_irregular", 1)? != 0,
        })
    }
}

pub struct CollapseOutput {
    pub curves: Vec<CollapseCurve>,
    pub consecutive_distances: Vec<(usize, usize, f64)>,
    pub pair_distance: f64,
    pub irregular_distance: Option<f64>,
}

fn random_start_result(
    p: usize,
    chain: &ChainSpec,
    rng: &mut ChaCha8Rng,
    opts: &OptimOptions,
) -> Result<OptimResult> {
    let gammas: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    let betas: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
    Ok(minimize(&QaoaAngles::new(gammas, betas)?, chain, opts)?)
}

pub fn compute(params: &CollapseParams, seed: u64, opts: &OptimOptions) -> Result<CollapseOutput> {
    let chain = ChainSpec::new(params.n, 0.0)?;
    let ladder = regular_schedule(params.p_target, &chain, opts)?;
    let results: Vec<OptimResult> = ladder.levels.iter().map(|l| l.result.clone()).collect();
    let curves = collapse_transform(&results, 0.0);

    let consecutive_distances: Vec<(usize, usize, f64)> = curves
        .windows(2)
        .map(|w| (w[0].p, w[1].p, collapse_distance(&w[0], &w[1], CENTRAL_WINDOW)))
        .collect();

    let find = |p: usize| curves.iter().find(|c| c.p == p);
    let pair_distance = match (find(params.pair.0), find(params.pair.1)) {
        (Some(a), Some(b)) => collapse_distance(a, b, CENTRAL_WINDOW),
        _ => f64::NAN,
    };

    let irregular_distance = if params.include_irregular {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_start_result(params.pair.0, &chain, &mut rng, opts)?;
        let b = random_start_result(params.pair.1, &chain, &mut rng, opts)?;
        let irregular = collapse_transform(&[a, b], 0.0);
        Some(collapse_distance(&irregular[0], &irregular[1], CENTRAL_WINDOW))
    } else {
        None
    };

    Ok(CollapseOutput {
        curves,
        consecutive_distances,
        pair_distance,
        irregular_distance,
    })
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = CollapseParams::from_config(cfg)?;
    let output = compute(&params, cfg.seed, &OptimOptions::default())?;
    let hash = cfg.hash();

    let csv_path = cfg.out_dir.join("collapse.csv");
    let mut csv = CsvWriter::create(&csv_path, &["p", "t_over_tau", "s_rescaled"], &hash)?;
    for curve in &output.curves {
        for &(x, y) in &curve.points {
            csv.write_row(&[
                Field::UInt(curve.p as u64),
                Field::Float(x),
                Field::Float(y),
            ])?;
        }
    }
    let csv_path = csv.finish()?;

    let json_path = write_json(
        &cfg.out_dir.join("collapse.json"),
        &json!({
            "config_hash": hash,
            "consecutive_distances": output.consecutive_distances
                .iter()
                .map(|(a, b, d)| json!({"p_low": a, "p_high": b, "distance": d}))
                .collect::<Vec<_>>(),
            "pair": [params.pair.0, params.pair.1],
            "pair_distance": output.pair_distance,
            "irregular_distance": output.irregular_distance,
        }),
    )?;

    Ok(vec![csv_path, json_path])
}

//! Optimal residual energy versus circuit depth, compared against the
//! variational bound `1/(2P + 2)` (zero for `2P >= N`).

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{CsvWriter, Field};
use fermion_core::ChainSpec;
use schedule_optimizer::{
    contracted_interpolation, linear_schedule_angles, minimize, regular_schedule, OptimOptions,
    RegularLadder,
};
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct BoundScanParams {
    pub n_list: Vec<usize>,
    pub p_min: usize,
    pub p_max: usize,
}

impl BoundScanParams {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        Ok(Self {
            n_list: cfg.get_usize_list("n_list", &[50])?,
            p_min: cfg.get_usize("p_min", 1)?,
            p_max: cfg.get_usize("p_max", 16)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BoundRow {
    pub n: usize,
    pub p: usize,
    pub eps_res_opt: f64,
    pub bound: f64,
    pub saturated: bool,
    pub n_iterations: usize,
}

/// Saturation thresholds: against the finite bound for `2P < N`, against
/// zero for `2P >= N`.
pub const BOUND_TOL: f64 = 1e-6;
pub const ZERO_TOL: f64 = 1e-8;

/// Reference ladder used for warm starts: large enough that every level
/// stays in the bound regime regardless of the scanned `N`.
pub fn reference_ladder(p_max: usize, opts: &OptimOptions) -> Result<RegularLadder> {
    let p_ladder = p_max.next_power_of_two().max(2);
    let n_ref = 4 * p_ladder + 2;
    let chain = ChainSpec::new(n_ref, 0.0)?;
    Ok(regular_schedule(p_ladder, &chain, opts)?)
}

/// Optimize depth `p` on `chain` starting from the regular ladder: the
/// deepest ladder level at or below `p` is interpolated up (depth 1 starts
/// from the digitized linear schedule directly).
pub fn optimize_from_ladder(
    ladder: &RegularLadder,
    p: usize,
    chain: &ChainSpec,
    opts: &OptimOptions,
) -> Result<schedule_optimizer::OptimResult> {
    let initial = if p == 1 {
        linear_schedule_angles(1, chain.field)?
    } else {
        let source = ladder
            .levels
            .iter()
            .rev()
            .find(|l| l.depth() <= p)
            .expect("ladder starts at depth 2");
        if source.depth() == p {
            source.result.angles.clone()
        } else {
            contracted_interpolation(&source.result.angles, p, chain.field)?
        }
    };
    Ok(minimize(&initial, chain, opts)?)
}

pub fn compute(params: &BoundScanParams, opts: &OptimOptions) -> Result<Vec<BoundRow>> {
    let ladder = reference_ladder(params.p_max, opts)?;
    let mut rows = Vec::new();
    for &n in &params.n_list {
        let chain = ChainSpec::new(n, 0.0)?;
        for p in params.p_min..=params.p_max {
            let result = optimize_from_ladder(&ladder, p, &chain, opts)?;
            let (bound, saturated) = if 2 * p < n {
                let b = 1.0 / (2.0 * p as f64 + 2.0);
                (b, (result.eps_res - b).abs() < BOUND_TOL)
            } else {
                (0.0, result.eps_res < ZERO_TOL)
            };
            rows.push(BoundRow {
                n,
                p,
                eps_res_opt: result.eps_res,
                bound,
                saturated,
                n_iterations: result.n_iterations,
            });
        }
    }
    Ok(rows)
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = BoundScanParams::from_config(cfg)?;
    let rows = compute(&params, &OptimOptions::default())?;
    let path = cfg.out_dir.join("bound_scan.csv");
    let mut csv = CsvWriter::create(
        &path,
        &["n", "p", "eps_res_opt", "bound", "saturated", "n_iterations"],
        &cfg.hash(),
    )?;
    for row in &rows {
        csv.write_row(&[
            Field::UInt(row.n as u64),
            Field::UInt(row.p as u64),
            Field::Float(row.eps_res_opt),
            Field::Float(row.bound),
            Field::Bool(row.saturated),
            Field::UInt(row.n_iterations as u64),
        ])?;
    }
    Ok(vec![csv.finish()?])
}

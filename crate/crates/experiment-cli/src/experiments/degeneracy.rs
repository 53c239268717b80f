//! Count the distinct degenerate optima at small depth from seeded random
//! restarts; the expected count is 2^P.

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::write_json;
use fermion_core::ChainSpec;
use schedule_optimizer::{enumerate_minima, MinimaSet, OptimOptions};
use serde_json::json;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct DegeneracyParams {
    pub p_list: Vec<usize>,
    pub n_starts_list: Vec<usize>,
    pub n: usize,
    pub cluster_tol: f64,
}

impl DegeneracyParams {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        let p_list = cfg.get_usize_list("p_list", &[1, 2, 3])?;
        let default_starts: Vec<usize> = p_list.iter().map(|p| default_starts_for(*p)).collect();
        Ok(Self {
            n_starts_list: cfg.get_usize_list("n_starts_list", &default_starts)?,
            p_list,
            n: cfg.get_usize("n", 50)?,
            cluster_tol: cfg.get_f64("cluster_tol", 1e-4)?,
        })
    }
}

fn default_starts_for(p: usize) -> usize {
    match p {
        1 => 200,
        2 => 500,
        _ => 2000,
    }
}

pub fn enumerate_at_depth(
    p: usize,
    n: usize,
    n_starts: usize,
    seed: u64,
    cluster_tol: f64,
    opts: &OptimOptions,
) -> Result<MinimaSet> {
    let chain = ChainSpec::new(n, 0.0)?;
    // Offset the stream per depth so runs stay independent of list order.
    Ok(enumerate_minima(
        p,
        &chain,
        n_starts,
        seed.wrapping_add(p as u64),
        cluster_tol,
        opts,
    )?)
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = DegeneracyParams::from_config(cfg)?;
    let opts = OptimOptions::default();
    let mut reports = Vec::new();
    for (idx, &p) in params.p_list.iter().enumerate() {
        let n_starts = params
            .n_starts_list
            .get(idx)
            .copied()
            .unwrap_or_else(|| default_starts_for(p));
        let set = enumerate_at_depth(p, params.n, n_starts, cfg.seed, params.cluster_tol, &opts)?;
        reports.push(json!({
            "p": p,
            "expected": 1u64 << p,
            "n_distinct": set.minima.len(),
            "n_starts": set.n_starts,
            "n_converged": set.n_converged,
            "n_dropped": set.n_dropped,
            "n_off_bound": set.n_off_bound,
            "cluster_sizes": set.cluster_sizes,
            "minima": set.minima,
        }));
    }
    let path = write_json(
        &cfg.out_dir.join("degeneracy.json"),
        &json!({
            "config_hash": cfg.hash(),
            "n": params.n,
            "cluster_tol": params.cluster_tol,
            "depths": reports,
        }),
    )?;
    Ok(vec![path])
}

//! Regular schedules when the target keeps a transverse field: the
//! schedule flattens near the critical point s_c = 1/(2 - h), located here
//! from the minimum slope of the optimized s_m profile.
//!
//! At strong fields the smooth optimum is not reachable from the digitized
//! linear start (the bottom-level search lands on irregular minima whose
//! layer durations are not even positive), so the bottom level is carried
//! over from zero field by stepping the field up gradually and re-optimizing
//! at fixed depth; the depth ladder then proceeds at the target field. Note
//! the smooth strong-field schedules overshoot s = 1 near the end of the
//! sweep; the profile is reported unclamped.

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{write_json, CsvWriter, Field};
use fermion_core::{undigitize, ChainSpec, QaoaAngles};
use schedule_optimizer::{
    contracted_interpolation, linear_schedule_angles, minimize, OptimOptions,
};
use serde_json::json;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct FieldScanParams {
    pub h_list: Vec<f64>,
    pub p_target: usize,
    /// Finite-field energies are evaluated on a periodic chain of
    /// `n_eval_factor * p_target` sites.
    pub n_eval_factor: usize,
}

impl FieldScanParams {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        Ok(Self {
            h_list: cfg.get_f64_list("h_list", &[0.0, 0.25, 0.5])?,
            p_target: cfg.get_usize("p", 64)?,
            n_eval_factor: cfg.get_usize("n_eval_factor", 4)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FieldProfile {
    pub h: f64,
    pub s_values: Vec<f64>,
    pub t_mids: Vec<f64>,
    /// Midpoint of the flattest segment of the profile.
    pub s_at_min_slope: f64,
    pub predicted_s_c: f64,
    pub monotone: bool,
}

/// Depth of the bottom ladder level used for the field continuation.
const BOTTOM_DEPTH: usize = 4;
/// Largest field increment per continuation step.
const FIELD_STEP: f64 = 0.05;

/// Smooth optimum at depth `p_target` and field `h`: zero-field bottom
/// level, field continuation at fixed depth, then depth doubling.
fn regular_angles_at_field(
    h: f64,
    p_target: usize,
    n_eval: usize,
    opts: &OptimOptions,
) -> Result<QaoaAngles> {
    let p0 = BOTTOM_DEPTH.min(p_target);
    let chain0 = ChainSpec::new(n_eval, 0.0)?;
    let mut angles = minimize(&linear_schedule_angles(p0, 0.0)?, &chain0, opts)?.angles;

    if h > 0.0 {
        let n_steps = (h / FIELD_STEP).ceil().max(1.0) as usize;
        for i in 1..=n_steps {
            let h_i = h * i as f64 / n_steps as f64;
            let chain = ChainSpec::new(n_eval, h_i)?;
            angles = minimize(&angles, &chain, opts)?.angles;
        }
    }

    let chain = ChainSpec::new(n_eval, h)?;
    let mut p = p0;
    while p < p_target {
        p *= 2;
        let init = contracted_interpolation(&angles, p, h)?;
        angles = minimize(&init, &chain, opts)?.angles;
    }
    Ok(angles)
}

pub fn compute(params: &FieldScanParams, opts: &OptimOptions) -> Result<Vec<FieldProfile>> {
    if !params.p_target.is_power_of_two() || params.p_target < BOTTOM_DEPTH {
        return Err(crate::config::ConfigError::BadParam {
            key: "p".to_string(),
            message: format!(
                "depth must be a power of two >= {BOTTOM_DEPTH} (got {})",
                params.p_target
            ),
        }
        .into());
    }
    let n_eval = params.n_eval_factor * params.p_target;
    let mut profiles = Vec::new();
    for &h in &params.h_list {
        let angles = regular_angles_at_field(h, params.p_target, n_eval, opts)?;
        let (s_values, dt) = undigitize(&angles, h);
        let mut t_mids = Vec::with_capacity(dt.len());
        let mut acc = 0.0;
        for &d in &dt {
            t_mids.push(acc + 0.5 * d);
            acc += d;
        }
        let mut min_slope = f64::INFINITY;
        let mut s_flat = f64::NAN;
        for w in s_values.windows(2) {
            let slope = w[1] - w[0];
            if slope < min_slope {
                min_slope = slope;
                s_flat = 0.5 * (w[0] + w[1]);
            }
        }
        let monotone = s_values.windows(2).all(|w| w[0] < w[1]);
        profiles.push(FieldProfile {
            h,
            s_values,
            t_mids,
            s_at_min_slope: s_flat,
            predicted_s_c: 1.0 / (2.0 - h),
            monotone,
        });
    }
    Ok(profiles)
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let params = FieldScanParams::from_config(cfg)?;
    let profiles = compute(&params, &OptimOptions::default())?;
    let hash = cfg.hash();

    let csv_path = cfg.out_dir.join("field_scan.csv");
    let mut csv = CsvWriter::create(&csv_path, &["h", "m", "s_m"], &hash)?;
    for profile in &profiles {
        for (m, &s) in profile.s_values.iter().enumerate() {
            csv.write_row(&[
                Field::Float(profile.h),
                Field::UInt((m + 1) as u64),
                Field::Float(s),
            ])?;
        }
    }
    let csv_path = csv.finish()?;

    let json_path = write_json(
        &cfg.out_dir.join("field_scan.json"),
        &json!({
            "config_hash": hash,
            "p": params.p_target,
            "n_eval": params.n_eval_factor * params.p_target,
            "flattening": profiles.iter().map(|p| json!({
                "h": p.h,
                "s_at_min_slope": p.s_at_min_slope,
                "predicted_s_c": p.predicted_s_c,
                "monotone": p.monotone,
            })).collect::<Vec<_>>(),
        }),
    )?;

    Ok(vec![csv_path, json_path])
}

//! Least-squares fits of residual-energy scaling curves.

use crate::error::{Error, Result};

/// Power-law fit `eps ~ prefactor * tau^exponent` (least squares in
/// log-log space), with the companion reciprocal-law fit.
#[derive(Debug, Clone, Copy)]
pub struct ScalingFit {
    pub exponent: f64,
    pub prefactor: f64,
    /// Coefficient of determination of the log-log regression.
    pub r_squared: f64,
    pub fit_window: (f64, f64),
    /// Fit of the saturating form `eps = 1/(a tau + b)`.
    pub recip: RecipFit,
}

/// `eps = 1/(a tau + b)`, fitted by linear least squares on `1/eps`.
#[derive(Debug, Clone, Copy)]
pub struct RecipFit {
    pub a: f64,
    pub b: f64,
    /// Coefficient of determination of the linear regression of `1/eps`
    /// on `tau`.
    pub r_squared: f64,
}

fn linear_least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let pred = intercept + slope * x;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    (slope, intercept, r_squared)
}

/// Fit `(tau, eps)` points inside `window = (tau_min, tau_max)` (inclusive).
/// Requires at least three distinct tau values in the window; every point
/// used must have positive tau and eps.
pub fn scaling_fit(points: &[(f64, f64)], window: (f64, f64)) -> Result<ScalingFit> {
    let selected: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(tau, _)| *tau >= window.0 && *tau <= window.1)
        .collect();
    for &(tau, eps) in &selected {
        if !(tau > 0.0 && eps > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scaling fits need positive tau and eps (got ({tau}, {eps}))"
            )));
        }
    }
    let mut taus: Vec<f64> = selected.iter().map(|p| p.0).collect();
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    taus.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * a.abs().max(1.0));
    if taus.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "scaling fit needs at least 3 distinct tau values in the window (got {})",
            taus.len()
        )));
    }

    let log_x: Vec<f64> = selected.iter().map(|p| p.0.ln()).collect();
    let log_y: Vec<f64> = selected.iter().map(|p| p.1.ln()).collect();
    let (exponent, intercept, r_squared) = linear_least_squares(&log_x, &log_y);

    let xs: Vec<f64> = selected.iter().map(|p| p.0).collect();
    let inv_y: Vec<f64> = selected.iter().map(|p| 1.0 / p.1).collect();
    let (a, b, recip_r2) = linear_least_squares(&xs, &inv_y);

    Ok(ScalingFit {
        exponent,
        prefactor: intercept.exp(),
        r_squared,
        fit_window: window,
        recip: RecipFit {
            a,
            b,
            r_squared: recip_r2,
        },
    })
}

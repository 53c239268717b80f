//! Annealing schedules s(t) on [0, tau]: the linear ramp, the local-adiabatic
//! Roland-Cerf profile, and piecewise-constant (digitized) schedules.

use crate::error::{Error, Result};

/// Number of tabulation knots on the half interval s in [0, 1/2]; the full
/// profile is the mirror image, so this matches a 1e5-knot full-range table.
const RC_HALF_KNOTS: usize = 50_000;

/// A monotone interpolation schedule from the driver (s = 0) to the target
/// (s = 1) over total time `tau`.
#[derive(Debug, Clone)]
pub enum AnnealSchedule {
    /// s(t) = t / tau.
    Linear { total_time: f64 },
    /// Local-adiabatic profile: ds/dt proportional to the squared bulk gap
    /// `4 (1 - 2s)^2` regularized by `gap_floor^2`, so the sweep slows near
    /// the critical point s = 1/2. `velocity_scale` is the solved rate
    /// constant that enforces s(tau) = 1.
    RolandCerf {
        total_time: f64,
        velocity_scale: f64,
        gap_floor: f64,
        /// t(s) at uniform s-knots on [0, 1/2]; the second half follows by
        /// the symmetry s(t) = 1 - s(tau - t).
        half_knots: Vec<f64>,
    },
    /// Step schedule holding `s_values[m]` for `dt_values[m]`.
    PiecewiseConstant {
        s_values: Vec<f64>,
        dt_values: Vec<f64>,
    },
}

impl AnnealSchedule {
    pub fn linear(total_time: f64) -> Result<Self> {
        if !(total_time > 0.0 && total_time.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "total_time must be positive (got {total_time})"
            )));
        }
        Ok(AnnealSchedule::Linear { total_time })
    }

    pub fn piecewise_constant(s_values: Vec<f64>, dt_values: Vec<f64>) -> Result<Self> {
        if s_values.is_empty() || s_values.len() != dt_values.len() {
            return Err(Error::InvalidArgument(
                "piecewise schedule needs equal-length non-empty s and dt".to_string(),
            ));
        }
        if dt_values.iter().any(|&dt| !(dt > 0.0 && dt.is_finite())) {
            return Err(Error::InvalidArgument("all dt must be positive".to_string()));
        }
        if s_values.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
            return Err(Error::InvalidArgument(
                "all s values must lie in (0, 1]".to_string(),
            ));
        }
        Ok(AnnealSchedule::PiecewiseConstant { s_values, dt_values })
    }

    pub fn total_time(&self) -> f64 {
        match self {
            AnnealSchedule::Linear { total_time } => *total_time,
            AnnealSchedule::RolandCerf { total_time, .. } => *total_time,
            AnnealSchedule::PiecewiseConstant { dt_values, .. } => dt_values.iter().sum(),
        }
    }

    /// s(t), clamped to [0, tau]. For piecewise-constant schedules this is
    /// the step function (left-closed intervals).
    pub fn value(&self, t: f64) -> f64 {
        match self {
            AnnealSchedule::Linear { total_time } => (t / total_time).clamp(0.0, 1.0),
            AnnealSchedule::RolandCerf {
                total_time,
                half_knots,
                ..
            } => roland_cerf_value(t, *total_time, half_knots),
            AnnealSchedule::PiecewiseConstant { s_values, dt_values } => {
                if t <= 0.0 {
                    return s_values[0];
                }
                let mut acc = 0.0;
                for (s, dt) in s_values.iter().zip(dt_values) {
                    acc += dt;
                    if t < acc {
                        return *s;
                    }
                }
                *s_values.last().expect("non-empty by construction")
            }
        }
    }
}

/// Build the Roland-Cerf schedule for the zero-field chain: solve
/// `ds/dt = v (4 (1 - 2s)^2 + gap_floor^2)` with s(0) = 0 and the rate `v`
/// fixed by s(tau) = 1, via dense tabulation of t(s) on the half interval
/// and the mirror symmetry about s = 1/2.
pub fn roland_cerf_schedule(tau: f64, gap_floor: f64) -> Result<AnnealSchedule> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tau must be positive (got {tau})"
        )));
    }
    if !(gap_floor > 0.0 && gap_floor.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "gap_floor must be positive (got {gap_floor})"
        )));
    }

    // Cumulative trapezoid of 1/(gap^2 + floor^2) over uniform s-knots.
    let ds = 0.5 / RC_HALF_KNOTS as f64;
    let speed_inv = |s: f64| {
        let gap = 2.0 * (1.0 - 2.0 * s);
        1.0 / (gap * gap + gap_floor * gap_floor)
    };
    let mut raw = Vec::with_capacity(RC_HALF_KNOTS + 1);
    raw.push(0.0);
    let mut acc = 0.0;
    let mut prev = speed_inv(0.0);
    for i in 1..=RC_HALF_KNOTS {
        let cur = speed_inv(i as f64 * ds);
        acc += 0.5 * (prev + cur) * ds;
        raw.push(acc);
        prev = cur;
    }
    let f_half = acc;
    // Normalize to t(1/2) = tau/2 exactly.
    let half_knots: Vec<f64> = raw.iter().map(|f| 0.5 * tau * (f / f_half)).collect();
    let velocity_scale = 2.0 * f_half / tau;

    Ok(AnnealSchedule::RolandCerf {
        total_time: tau,
        velocity_scale,
        gap_floor,
        half_knots,
    })
}

fn roland_cerf_value(t: f64, tau: f64, half_knots: &[f64]) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= tau {
        return 1.0;
    }
    let half = 0.5 * tau;
    if t > half {
        return 1.0 - roland_cerf_value(tau - t, tau, half_knots);
    }
    // Invert the monotone table by binary search + linear interpolation.
    let idx = half_knots.partition_point(|&x| x <= t);
    if idx >= half_knots.len() {
        return 0.5;
    }
    let (t0, t1) = (half_knots[idx - 1], half_knots[idx]);
    let ds = 0.5 / RC_HALF_KNOTS as f64;
    let s0 = (idx - 1) as f64 * ds;
    if t1 > t0 {
        s0 + ds * (t - t0) / (t1 - t0)
    } else {
        s0
    }
}

/// Sample a continuous schedule at interval midpoints, producing the
/// piecewise-constant schedule with uniform step `dt_m`. The total time
/// must be an integer multiple of `dt_m`. Piecewise-constant input passes
/// through unchanged.
pub fn step_discretize(schedule: &AnnealSchedule, dt_m: f64) -> Result<AnnealSchedule> {
    if let AnnealSchedule::PiecewiseConstant { .. } = schedule {
        return Ok(schedule.clone());
    }
    if !(dt_m > 0.0 && dt_m.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "dt_m must be positive (got {dt_m})"
        )));
    }
    let tau = schedule.total_time();
    let steps_f = tau / dt_m;
    let p = steps_f.round();
    if p < 1.0 || (steps_f - p).abs() > 1e-9 * steps_f.max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "tau = {tau} is not an integer multiple of dt_m = {dt_m}"
        )));
    }
    let p = p as usize;
    let s_values: Vec<f64> = (1..=p)
        .map(|m| schedule.value((m as f64 - 0.5) * dt_m))
        .collect();
    AnnealSchedule::piecewise_constant(s_values, vec![dt_m; p])
}

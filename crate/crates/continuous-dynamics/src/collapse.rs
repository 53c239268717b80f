//! Rescaled-schedule collapse: regular optima at different depths fall on a
//! single curve when plotted as `(s_m - 1/2) tau` against `t_m / tau`.

use fermion_core::undigitize;
use schedule_optimizer::OptimResult;

/// One depth's rescaled schedule curve.
#[derive(Debug, Clone)]
pub struct CollapseCurve {
    pub p: usize,
    /// `(t_m / tau, (s_m - 1/2) tau)` at the layer midpoints, ordered in m.
    pub points: Vec<(f64, f64)>,
}

/// Transform each optimization result into its rescaled schedule curve.
/// `field` is the transverse field the angles were optimized against.
pub fn collapse_transform(results: &[OptimResult], field: f64) -> Vec<CollapseCurve> {
    results
        .iter()
        .map(|r| {
            let (s, dt) = undigitize(&r.angles, field);
            let tau: f64 = dt.iter().sum();
            let mut t_accum = 0.0;
            let points = s
                .iter()
                .zip(&dt)
                .map(|(&s_m, &dt_m)| {
                    let t_mid = t_accum + 0.5 * dt_m;
                    t_accum += dt_m;
                    (t_mid / tau, (s_m - 0.5) * tau)
                })
                .collect();
            CollapseCurve {
                p: r.depth(),
                points,
            }
        })
        .collect()
}

/// Central portion of the sweep where the rescaled schedules collapse onto
/// a universal curve. The first and last layers are boundary regions: there
/// `s` spans its full range at every depth, so `(s - 1/2) tau` grows with
/// the duration and no collapse can occur.
pub const CENTRAL_WINDOW: (f64, f64) = (0.2, 0.8);

/// Maximum vertical distance between two collapse curves over the
/// overlapping part of their abscissa range restricted to `window`.
/// Curves are polylines, so the maximum of the piecewise-linear difference
/// is attained at a knot of either curve.
pub fn collapse_distance(a: &CollapseCurve, b: &CollapseCurve, window: (f64, f64)) -> f64 {
    let range = |c: &CollapseCurve| {
        (
            c.points.first().map(|p| p.0).unwrap_or(0.0),
            c.points.last().map(|p| p.0).unwrap_or(0.0),
        )
    };
    let (a_lo, a_hi) = range(a);
    let (b_lo, b_hi) = range(b);
    let lo = a_lo.max(b_lo).max(window.0);
    let hi = a_hi.min(b_hi).min(window.1);
    if hi <= lo {
        return 0.0;
    }

    let eval = |c: &CollapseCurve, x: f64| -> f64 {
        // Linear interpolation along the polyline; x is inside its range.
        match c.points.iter().position(|p| p.0 >= x) {
            Some(0) => c.points[0].1,
            Some(i) => {
                let (x0, y0) = c.points[i - 1];
                let (x1, y1) = c.points[i];
                if x1 > x0 {
                    y0 + (x - x0) * (y1 - y0) / (x1 - x0)
                } else {
                    y0
                }
            }
            None => c.points.last().expect("non-empty curve").1,
        }
    };

    let mut dist = 0.0f64;
    for &(x, _) in a.points.iter().chain(b.points.iter()) {
        if x >= lo && x <= hi {
            dist = dist.max((eval(a, x) - eval(b, x)).abs());
        }
    }
    dist
}

/// Largest distance between consecutive curves, the collapse-quality metric
/// for a ladder of increasing depths.
pub fn max_consecutive_distance(curves: &[CollapseCurve], window: (f64, f64)) -> f64 {
    curves
        .windows(2)
        .map(|w| collapse_distance(&w[0], &w[1], window))
        .fold(0.0, f64::max)
}

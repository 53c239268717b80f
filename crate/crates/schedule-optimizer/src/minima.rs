//! Canonical angle domain and seeded enumeration of degenerate minima.
//!
//! Both angle families are periodic with period pi/2 (the underlying
//! rotations advance by full turns), so every optimum has a canonical
//! representative with all components in [0, pi/2). Distinct canonical
//! representatives are counted with a torus metric so that folds at the
//! domain edge cannot split a cluster.

use crate::bfgs::minimize;
use crate::error::{Error, Result};
use crate::result::{OptimOptions, OptimResult};
use fermion_core::{ChainSpec, QaoaAngles};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

/// Converged runs whose residual misses the variational bound by more than
/// this are excluded from degeneracy counts.
pub const SATURATION_TOL: f64 = 1e-7;

/// Fold every component into the canonical domain [0, pi/2). Leaves the
/// residual energy unchanged.
pub fn canonicalize(angles: &QaoaAngles) -> QaoaAngles {
    let fold = |v: &f64| v.rem_euclid(FRAC_PI_2);
    QaoaAngles::new(
        angles.gammas().iter().map(fold).collect(),
        angles.betas().iter().map(fold).collect(),
    )
    .expect("folding preserves shape and finiteness")
}

/// Max-norm distance on the pi/2 torus between canonical angle vectors.
fn torus_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).abs();
            d.min(FRAC_PI_2 - d)
        })
        .fold(0.0, f64::max)
}

/// Outcome of a seeded multi-start search for the degenerate optima.
#[derive(Debug, Clone)]
pub struct MinimaSet {
    /// One representative per distinct canonical minimum, sorted by angles.
    pub minima: Vec<OptimResult>,
    /// Number of converged runs that landed in each cluster.
    pub cluster_sizes: Vec<usize>,
    pub n_starts: usize,
    pub n_converged: usize,
    /// Runs dropped for non-convergence.
    pub n_dropped: usize,
    /// Converged runs dropped for missing the variational bound.
    pub n_off_bound: usize,
}

/// Run `n_starts` seeded BFGS searches from uniform random points in the
/// canonical domain and cluster the converged, bound-saturating results.
///
/// Requires the bound regime `2p < n_sites` at zero field, where every
/// global optimum has residual energy `1/(2p + 2)`.
pub fn enumerate_minima(
    p: usize,
    chain: &ChainSpec,
    n_starts: usize,
    seed: u64,
    cluster_tol: f64,
    opts: &OptimOptions,
) -> Result<MinimaSet> {
    if p == 0 || 2 * p >= chain.n_sites {
        return Err(Error::InvalidArgument(format!(
            "enumerate_minima requires 0 < 2p < n_sites (got p={p}, n_sites={})",
            chain.n_sites
        )));
    }
    if chain.field != 0.0 {
        return Err(Error::InvalidArgument(
            "enumerate_minima requires a zero-field chain".to_string(),
        ));
    }
    if !cluster_tol.is_finite() || cluster_tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "cluster_tol must be positive (got {cluster_tol})"
        )));
    }

    let bound = 1.0 / (2.0 * p as f64 + 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<(Vec<f64>, OptimResult)> = Vec::new();
    let mut n_dropped = 0;
    let mut n_off_bound = 0;
    let mut n_converged = 0;

    for _ in 0..n_starts {
        let gammas: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
        let betas: Vec<f64> = (0..p).map(|_| rng.gen::<f64>() * FRAC_PI_2).collect();
        let initial = QaoaAngles::new(gammas, betas)?;
        let run = match minimize(&initial, chain, opts) {
            Ok(r) => r,
            Err(Error::NumericalFailure { .. }) => {
                n_dropped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !run.converged {
            n_dropped += 1;
            continue;
        }
        n_converged += 1;
        if (run.eps_res - bound).abs() > SATURATION_TOL {
            n_off_bound += 1;
            continue;
        }
        let canonical = canonicalize(&run.angles);
        let key = canonical.to_flat();
        kept.push((
            key,
            OptimResult {
                angles: canonical,
                ..run
            },
        ));
    }

    // Sort before clustering so the result is independent of run order.
    kept.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("canonical angles are finite and comparable")
    });

    let mut minima: Vec<OptimResult> = Vec::new();
    let mut keys: Vec<Vec<f64>> = Vec::new();
    let mut cluster_sizes: Vec<usize> = Vec::new();
    'outer: for (key, result) in kept {
        for (i, rep) in keys.iter().enumerate() {
            if torus_distance(&key, rep) <= cluster_tol {
                cluster_sizes[i] += 1;
                continue 'outer;
            }
        }
        keys.push(key);
        minima.push(result);
        cluster_sizes.push(1);
    }

    Ok(MinimaSet {
        minima,
        cluster_sizes,
        n_starts,
        n_converged,
        n_dropped,
        n_off_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn canonicalize_folds_periodic_shift() {
        let a = QaoaAngles::new(vec![PI / 8.0 + FRAC_PI_2], vec![PI / 8.0]).unwrap();
        let c = canonicalize(&a);
        assert!((c.gammas()[0] - PI / 8.0).abs() < 1e-15);
        assert!((c.betas()[0] - PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let a = QaoaAngles::new(vec![0.3, 1.5], vec![0.0, 0.2]).unwrap();
        let once = canonicalize(&a);
        assert_eq!(once, canonicalize(&once));
    }

    #[test]
    fn canonicalize_folds_negative_angles() {
        let a = QaoaAngles::new(vec![-PI / 8.0], vec![0.1]).unwrap();
        let c = canonicalize(&a);
        assert!((c.gammas()[0] - 3.0 * PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn canonicalize_preserves_residual_energy() {
        let chain = ChainSpec::new(30, 0.0).unwrap();
        let a = QaoaAngles::new(vec![2.3, -0.9, 5.0], vec![1.9, 0.4, -2.2]).unwrap();
        let before = fermion_core::residual_energy(&a, &chain).unwrap().eps_res;
        let after = fermion_core::residual_energy(&canonicalize(&a), &chain)
            .unwrap()
            .eps_res;
        assert!((before - after).abs() < 1e-12);
    }

    #[test]
    fn torus_metric_wraps_at_domain_edge() {
        let d = torus_distance(&[1e-6], &[FRAC_PI_2 - 1e-6]);
        assert!(d < 3e-6);
    }
}

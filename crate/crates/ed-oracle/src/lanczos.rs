//! Extreme eigenvalues of a real symmetric operator via Lanczos iteration
//! with full reorthogonalization, plus Sturm-sequence bisection on the
//! resulting tridiagonal matrix.

/// Smallest and largest eigenvalue of the operator represented by `matvec`
/// acting on vectors of length `dim`.
pub fn extreme_eigenvalues<F>(dim: usize, mut matvec: F) -> (f64, f64)
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    assert!(dim >= 2, "operator dimension must be at least 2");
    let max_iter = dim.min(400);

    // Deterministic pseudo-random start vector (no external RNG).
    let mut v = deterministic_start(dim);
    normalize(&mut v);

    let mut basis: Vec<Vec<f64>> = vec![v.clone()];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut prev_extremes: Option<(f64, f64)> = None;

    for j in 0..max_iter {
        let mut w = matvec(&basis[j]);
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        axpy(&mut w, -a, &basis[j]);
        if j > 0 {
            let b_prev = beta[j - 1];
            axpy(&mut w, -b_prev, &basis[j - 1]);
        }
        // Full reorthogonalization, twice for numerical safety.
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                axpy(&mut w, -c, q);
            }
        }
        let b = norm(&w);
        let scale = alpha.iter().fold(0.0f64, |m, &x| m.max(x.abs())) + 1.0;
        if b < 1e-13 * scale {
            // Krylov space exhausted: the tridiagonal spectrum is exact.
            break;
        }
        beta.push(b);
        for x in w.iter_mut() {
            *x /= b;
        }
        basis.push(w);

        if alpha.len() >= 2 {
            let lo = tridiag_extreme(&alpha, &beta[..alpha.len() - 1], true);
            let hi = tridiag_extreme(&alpha, &beta[..alpha.len() - 1], false);
            if let Some((plo, phi)) = prev_extremes {
                let spread = (hi - lo).abs().max(1.0);
                if (lo - plo).abs() < 1e-14 * spread && (hi - phi).abs() < 1e-14 * spread {
                    return (lo, hi);
                }
            }
            prev_extremes = Some((lo, hi));
        }
    }

    let m = alpha.len();
    (
        tridiag_extreme(&alpha, &beta[..m.saturating_sub(1)], true),
        tridiag_extreme(&alpha, &beta[..m.saturating_sub(1)], false),
    )
}

fn deterministic_start(dim: usize) -> Vec<f64> {
    let mut state = 0x9e3779b97f4a7c15u64;
    (0..dim)
        .map(|_| {
            // splitmix64 step mapped to (-1, 1).
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn normalize(v: &mut [f64]) {
    let n = norm(v);
    for x in v.iter_mut() {
        *x /= n;
    }
}

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) that are
/// strictly below `x`, from the Sturm sequence of leading principal minors.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if q == 0.0 { 1e-300 } else { q };
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest (`lowest = true`) or largest eigenvalue of the tridiagonal.
fn tridiag_extreme(diag: &[f64], off: &[f64], lowest: bool) -> f64 {
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..diag.len() {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i < off.len() {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let target = if lowest { 1 } else { diag.len() };
    let (mut a, mut b) = (lo, hi);
    for _ in 0..120 {
        let mid = 0.5 * (a + b);
        if sturm_count(diag, off, mid) >= target {
            b = mid;
        } else {
            a = mid;
        }
        if b - a <= f64::EPSILON * (1.0 + a.abs().max(b.abs())) {
            break;
        }
    }
    0.5 * (a + b)
}

//! Sign-change bracketing on a uniform energy grid, refined by bisection.

use std::f64::consts::PI;

use crate::potential::WellSpec;

/// Default energy step of the bracketing scan.
///
/// The level spacing of the enclosing infinite well of width `a + b` sets
/// the scale; the step is half its lowest spacing, capped at 0.1.
pub fn scan_step(spec: &WellSpec) -> f64 {
    let l = spec.width();
    (PI * PI / (2.0 * l * l)).min(0.1)
}

/// First scan energy. The floor is non-negative, so the ground state lies
/// at or above `(pi / (a + b))^2`; starting at half of that skips the trivial
/// zero of the characteristic function at `E = 0`.
pub fn scan_start(spec: &WellSpec) -> f64 {
    let l = spec.width();
    0.5 * (PI / l).powi(2)
}

/// Intervals `[lo, hi]` on which `f` changes sign, scanning `[start, end]`
/// with spacing `step`. A grid point where `f` vanishes exactly is returned
/// as the degenerate interval `[x, x]`.
pub fn bracket<F>(mut f: F, start: f64, end: f64, step: f64) -> Vec<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let mut out = Vec::new();
    // also rejects NaN arguments
    if !matches!(end.partial_cmp(&start), Some(std::cmp::Ordering::Greater))
        || !matches!(step.partial_cmp(&0.0), Some(std::cmp::Ordering::Greater))
    {
        return out;
    }
    let n_cells = ((end - start) / step).ceil().max(1.0) as usize;
    let mut prev_x = start;
    let mut prev_f = f(start);
    if prev_f == 0.0 {
        out.push((start, start));
    }
    for i in 1..=n_cells {
        let x = if i == n_cells {
            end
        } else {
            start + step * i as f64
        };
        let fx = f(x);
        if fx == 0.0 {
            out.push((x, x));
        } else if prev_f != 0.0 && (prev_f < 0.0) != (fx < 0.0) {
            out.push((prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    out
}

/// Bisects a sign-change bracket until its width drops below `tol`, or to
/// machine resolution when `tol` is zero.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    if lo == hi {
        return lo;
    }
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of a sampled function, skipping exact zeros.
pub fn count_sign_changes<I>(values: I) -> usize
where
    I: IntoIterator<Item = f64>,
{
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        let neg = v < 0.0;
        if let Some(prev) = last {
            if prev != neg {
                changes += 1;
            }
        }
        last = Some(neg);
    }
    changes
}

//! Independent reference solvers shared by the integration tests.
//!
//! None of these reuse the library's numerics: the finite-difference
//! Hamiltonian is diagonalized by Sturm-sequence bisection, momentum
//! amplitudes come from adaptive quadrature of `psi(x) exp(-ipx)`, and
//! classical side probabilities from a time-stepped trajectory.

#![allow(dead_code)]

use asymwell::WellSpec;

/// `-d^2/dx^2 + V` on the interior nodes of a uniform grid, Dirichlet at both walls.
pub struct FdHamiltonian {
    pub h: f64,
    pub x: Vec<f64>,
    pub diag: Vec<f64>,
    pub off: f64,
}

impl FdHamiltonian {
    pub fn new(spec: &WellSpec, n_grid: usize) -> Self {
        let h = spec.width() / n_grid as f64;
        let x: Vec<f64> = (1..n_grid).map(|i| -spec.a + h * i as f64).collect();
        let diag = x
            .iter()
            .map(|&xi| 2.0 / (h * h) + cell_potential(spec, xi, h))
            .collect();
        FdHamiltonian {
            h,
            x,
            diag,
            off: -1.0 / (h * h),
        }
    }

    /// Number of eigenvalues below `lambda` (Sturm count of the LDL^T pivots).
    pub fn count_below(&self, lambda: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 {
                a - lambda
            } else {
                a - lambda - off2 / d
            };
            if d == 0.0 {
                d = -f64::EPSILON * (a.abs() + lambda.abs());
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `n`-th eigenvalue (1-based) by bisection on the Sturm count.
    pub fn eigenvalue(&self, n: usize) -> f64 {
        let mut lo =
            self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - 4.0 / (self.h * self.h);
        let mut hi =
            self.diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 4.0 / (self.h * self.h);
        lo = lo.min(0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) >= n {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for `lambda` by inverse iteration, normalized so `sum psi^2 h = 1`
    /// with a positive first entry.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        // shift slightly so the system stays solvable
        let shift = lambda + 1e-10 * lambda.abs().max(1.0);
        let mut v = vec![1.0; n];
        for _ in 0..4 {
            v = self.solve_shifted(shift, &v);
            let norm = v.iter().map(|y| y * y).sum::<f64>().sqrt();
            v.iter_mut().for_each(|y| *y /= norm);
        }
        let scale = (v.iter().map(|y| y * y).sum::<f64>() * self.h).sqrt();
        let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
        v.iter_mut().for_each(|y| *y *= sign / scale);
        v
    }

    /// Thomas algorithm for `(H - shift) y = rhs`.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let b0 = self.diag[0] - shift;
        c[0] = self.off / b0;
        d[0] = rhs[0] / b0;
        for i in 1..n {
            let m = self.diag[i] - shift - self.off * c[i - 1];
            c[i] = self.off / m;
            d[i] = (rhs[i] - self.off * d[i - 1]) / m;
        }
        let mut y = vec![0.0; n];
        y[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = d[i] - c[i] * y[i + 1];
        }
        y
    }

    /// Left-side probability of an eigenvector, trapezoid rule with the origin
    /// node (when present) shared half and half.
    pub fn p_left(&self, v: &[f64]) -> f64 {
        let mut sum = 0.0;
        for (xi, yi) in self.x.iter().zip(v) {
            let w = if xi.abs() < 1e-9 * self.h {
                0.5
            } else if *xi < 0.0 {
                1.0
            } else {
                0.0
            };
            sum += w * yi * yi;
        }
        sum * self.h
    }
}

/// Floor averaged over the cell `[x - h/2, x + h/2]` for the step (which
/// keeps the scheme second order when the origin falls between nodes);
/// sampled at `x` for smooth floors.
fn cell_potential(spec: &WellSpec, x: f64, h: f64) -> f64 {
    if !spec.smoothing.is_step() {
        return spec.floor(x);
    }
    let right = ((x + 0.5 * h) / h).clamp(0.0, 1.0);
    spec.v0 * right
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            left + right + diff / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    // split into panels first so oscillatory integrands are resolved
    let panels = 64;
    let w = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (lo, hi) = (a + w * i as f64, a + w * (i + 1) as f64);
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            rec(f, lo, hi, fa, fm, fb, whole, tol / panels as f64, 40)
        })
        .sum()
}

/// `phi(p)` of any wavefunction on `[-a, b]` by direct quadrature, split at the origin.
pub fn phi_quadrature(psi: &dyn Fn(f64) -> f64, a: f64, b: f64, p: f64) -> (f64, f64) {
    let tol = 1e-13;
    let re = |x: f64| psi(x) * (p * x).cos();
    let im = |x: f64| -psi(x) * (p * x).sin();
    let norm = (2.0 * std::f64::consts::PI).sqrt();
    let r = adaptive_simpson(&re, -a, 0.0, tol) + adaptive_simpson(&re, 0.0, b, tol);
    let i = adaptive_simpson(&im, -a, 0.0, tol) + adaptive_simpson(&im, 0.0, b, tol);
    (r / norm, i / norm)
}

/// Fraction of time a classical particle of energy `e` spends at `x < 0`,
/// from a trajectory stepped with `dt` over `t_total`.
///
/// The particle starts at the left wall moving right, reflects elastically
/// at the walls, and crosses (or bounces off) the step with `v = 2 sqrt(E - V)`.
pub fn time_of_flight_p_left(spec: &WellSpec, e: f64, dt: f64, t_total: f64) -> f64 {
    let speed = |x: f64| {
        let v = if x < 0.0 { 0.0 } else { spec.v0 };
        2.0 * (e - v).max(0.0).sqrt()
    };
    let mut x = -spec.a;
    let mut dir = 1.0;
    let mut t = 0.0;
    let (mut left, mut total) = (0.0, 0.0);
    while t < t_total {
        if x < 0.0 {
            left += dt;
        }
        total += dt;
        let mut nx = x + dir * speed(x) * dt;
        if x < 0.0 && nx >= 0.0 && e <= spec.v0 {
            nx = -nx;
            dir = -dir;
        } else if (x < 0.0) != (nx < 0.0) {
            // finish the step at the new speed after crossing the origin
            let frac = -x / (nx - x);
            nx = dir * speed(if dir > 0.0 { 0.0 } else { -1e-300 }) * dt * (1.0 - frac);
        }
        if nx > spec.b {
            nx = 2.0 * spec.b - nx;
            dir = -dir;
        } else if nx < -spec.a {
            nx = -2.0 * spec.a - nx;
            dir = -dir;
        }
        x = nx;
        t += dt;
    }
    left / total
}

/// Energies of the symmetric infinite well of width `l`.
pub fn flat_well_energy(n: usize, l: f64) -> f64 {
    (n as f64 * std::f64::consts::PI / l).powi(2)
}

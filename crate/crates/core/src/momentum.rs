//! Momentum-space amplitudes of the closed-form step-well states.
//!
//! `phi(p) = (2 pi)^{-1/2} int psi(x) exp(-i p x) dx` (`hbar = 1`). Each side of
//! `psi` is a sum of two exponentials, so the transform reduces to integrals
//! of `exp(beta x + gamma)` over a finite interval. Writing those as
//! `exp(gamma + beta m) L sinh(beta L / 2) / (beta L / 2)` about the interval
//! midpoint `m` keeps them free of cancellation near the removable
//! singularities `p = ±k`, `p = ±q`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, WellError};
use crate::potential::WellSpec;
use crate::shooting::simpson;
use crate::spectrum::{Branch, EigenState};

/// Below this `|beta|` (i.e. `|p ∓ k|`) the series `1 + z^2/6` replaces `sinh(z)/z`.
const SINGULAR_GUARD: f64 = 1e-6;

/// `int_{x0}^{x1} exp(beta x + gamma) dx`.
fn exp_integral(beta: Complex64, gamma: Complex64, x0: f64, x1: f64) -> Complex64 {
    let len = x1 - x0;
    let mid = 0.5 * (x0 + x1);
    let z = beta * (0.5 * len);
    // sinh(z) / z
    let shape = if beta.norm() < SINGULAR_GUARD {
        Complex64::new(1.0, 0.0) + z * z / 6.0
    } else {
        z.sinh() / z
    };
    (gamma + beta * mid).exp() * len * shape
}

/// `int_0^b (b - x) exp(-i p x) dx`.
fn ramp_integral(p: f64, b: f64) -> Complex64 {
    // = exp(-i p b) int_0^b u exp(beta u) du with beta = i p
    let beta = Complex64::new(0.0, p);
    let bb = beta * b;
    let inner = if bb.norm() < 1e-2 {
        // b^2 sum_j (beta b)^j / (j! (j + 2))
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..10 {
            if j > 0 {
                term = term * bb / j as f64;
            }
            sum += term / (j as f64 + 2.0);
        }
        sum * b * b
    } else {
        (bb.exp() * (bb - 1.0) + 1.0) / (beta * beta)
    };
    Complex64::new(0.0, -p * b).exp() * inner
}

/// Momentum amplitude of a step-well eigenstate.
pub fn phi(state: &EigenState, p: f64) -> Complex64 {
    let (a, b) = (state.spec.a, state.spec.b);
    let i = Complex64::i();
    let k = state.k;
    let q = state.q;

    // sin(k(x + a)) = (e^{i k (x + a)} - e^{-i k (x + a)}) / 2i
    let left = (exp_integral(i * (k - p), i * (k * a), -a, 0.0)
        - exp_integral(-i * (k + p), -i * (k * a), -a, 0.0))
        / (2.0 * i);

    let right = match state.branch {
        Branch::Oscillatory => {
            (exp_integral(i * (q - p), -i * (q * b), 0.0, b)
                - exp_integral(-i * (q + p), i * (q * b), 0.0, b))
                / (2.0 * i)
        }
        Branch::Evanescent => {
            // sinh(qbar (b - x)) = (e^{qbar (b - x)} - e^{-qbar (b - x)}) / 2
            let down = Complex64::new(-q, -p);
            let up = Complex64::new(q, -p);
            (exp_integral(down, Complex64::new(q * b, 0.0), 0.0, b)
                - exp_integral(up, Complex64::new(-q * b, 0.0), 0.0, b))
                / 2.0
        }
        Branch::Threshold => ramp_integral(p, b),
    };

    (state.amp_left * left + state.amp_right * right) / (2.0 * PI).sqrt()
}

/// `|phi(p)|^2` sampled on a symmetric momentum grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentumDensity {
    pub state_n: usize,
    pub p_grid: Vec<f64>,
    pub density: Vec<f64>,
    /// `hbar k`, the left-side momentum.
    pub k_marker: f64,
    /// `hbar q`, present above the step only.
    pub q_marker: Option<f64>,
}

impl MomentumDensity {
    /// Simpson quadrature of the sampled density.
    pub fn total_probability(&self) -> f64 {
        if self.p_grid.len() < 2 {
            return 0.0;
        }
        let dp = self.p_grid[1] - self.p_grid[0];
        simpson(&self.density, dp)
    }

    /// Largest `|rho(p) - rho(-p)|` over the grid.
    pub fn asymmetry(&self) -> f64 {
        let n = self.density.len();
        (0..n / 2)
            .map(|i| (self.density[i] - self.density[n - 1 - i]).abs())
            .fold(0.0, f64::max)
    }

    /// Density at the grid point closest to `p`.
    pub fn nearest(&self, p: f64) -> f64 {
        let idx = self
            .p_grid
            .iter()
            .enumerate()
            .min_by(|x, y| (x.1 - p).abs().total_cmp(&(y.1 - p).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.density[idx]
    }

    /// Maximum of the density over `[lo, hi]`.
    pub fn max_in(&self, lo: f64, hi: f64) -> f64 {
        self.p_grid
            .iter()
            .zip(&self.density)
            .filter(|(p, _)| **p >= lo && **p <= hi)
            .map(|(_, d)| *d)
            .fold(0.0, f64::max)
    }
}

/// Samples `|phi|^2` at `n_points` momenta spanning `[-p_max, p_max]`.
pub fn density_series(state: &EigenState, p_max: f64, n_points: usize) -> Result<MomentumDensity> {
    if !(p_max.is_finite() && p_max > 0.0) {
        return Err(WellError::InvalidArgument(format!(
            "p_max must be positive, got {p_max}"
        )));
    }
    if n_points < 2 {
        return Err(WellError::InvalidArgument(format!(
            "need at least two momentum samples, got {n_points}"
        )));
    }
    let last = (n_points - 1) as f64;
    // integer numerator keeps the grid exactly symmetric
    let p_grid: Vec<f64> = (0..n_points)
        .map(|i| p_max * (2.0 * i as f64 - last) / last)
        .collect();
    let density = p_grid.iter().map(|&p| phi(state, p).norm_sqr()).collect();
    Ok(MomentumDensity {
        state_n: state.n,
        p_grid,
        density,
        k_marker: state.k,
        q_marker: state.is_above_threshold().then_some(state.q),
    })
}

/// `k - q` at an energy above the step; tends to `v0 / (2 sqrt(E))`.
pub fn peak_separation(spec: &WellSpec, energy: f64) -> Result<f64> {
    let v0 = spec.v0;
    if !(energy.is_finite() && energy > v0) {
        return Err(WellError::BelowThreshold { energy, v0 });
    }
    // sqrt(E) - sqrt(E - v0) without cancellation
    Ok(v0 / (energy.sqrt() + (energy - v0).sqrt()))
}

//! Closed-form bound states of the discontinuous step well.
//!
//! On the left the solution is `A sin(k (x + a))` with `k = sqrt(E)`. On the
//! right it depends on where `E` sits relative to the step:
//!
//! * `E > v0`: `B sin(q (x - b))`, `q = sqrt(E - v0)`
//! * `E < v0`: `B sinh(qbar (b - x))`, `qbar = sqrt(v0 - E)`
//! * `E = v0`: `B (b - x)`
//!
//! Energies are the zeros of the regularized characteristic function
//! `g(E) = k cos(ka) S(E) + C(E) sin(ka)`, with `S = sin(qb)/q` and `C = cos(qb)`
//! (hyperbolic above the step). `g` is continuous across `E = v0`, so a single
//! sign-change scan finds states on both branches.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Result, WellError};
use crate::potential::WellSpec;
use crate::roots;

/// Which form the right-hand wavefunction takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `E > v0`, oscillatory with wavenumber `q`.
    Oscillatory,
    /// `E = v0` exactly, linear.
    Threshold,
    /// `E < v0`, decaying with wavenumber `qbar`.
    Evanescent,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Oscillatory => "oscillatory",
            Branch::Threshold => "threshold",
            Branch::Evanescent => "evanescent",
        }
    }
}

/// `sin(t)/t` with a series near the origin.
pub(crate) fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// `sinh(t)/t` with a series near the origin.
pub(crate) fn sinhc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        1.0 + t * t / 6.0
    } else {
        t.sinh() / t
    }
}

/// `(t - sin t) / (2t)`, accurate for small `t`.
fn osc_fraction(t: f64) -> f64 {
    if t.abs() < 0.1 {
        // sum_j (-1)^(j+1) t^(2j) / (2 (2j+1)!)
        let t2 = t * t;
        let mut term = t2 / 12.0;
        let mut sum = term;
        for j in 2..8 {
            let jj = j as f64;
            term *= -t2 / ((2.0 * jj) * (2.0 * jj + 1.0));
            sum += term;
        }
        sum
    } else {
        (t - t.sin()) / (2.0 * t)
    }
}

/// `(sinh t - t) / (2t)`, accurate for small `t`.
fn hyp_fraction(t: f64) -> f64 {
    if t.abs() < 0.1 {
        let t2 = t * t;
        let mut term = t2 / 12.0;
        let mut sum = term;
        for j in 2..8 {
            let jj = j as f64;
            term *= t2 / ((2.0 * jj) * (2.0 * jj + 1.0));
            sum += term;
        }
        sum
    } else {
        (t.sinh() - t) / (2.0 * t)
    }
}

/// `int_0^len sin^2(kappa u) du`.
pub(crate) fn sin_sq_integral(kappa: f64, len: f64) -> f64 {
    len * osc_fraction(2.0 * kappa * len)
}

/// `int_0^len sinh^2(kappa u) du`.
pub(crate) fn sinh_sq_integral(kappa: f64, len: f64) -> f64 {
    len * hyp_fraction(2.0 * kappa * len)
}

/// Wavenumbers and branch at a given energy.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Wavenumbers {
    pub k: f64,
    pub q: f64,
    pub branch: Branch,
}

impl Wavenumbers {
    pub fn at(spec: &WellSpec, energy: f64) -> Self {
        let k = energy.sqrt();
        let d = energy - spec.v0;
        let (q, branch) = if d > 0.0 {
            (d.sqrt(), Branch::Oscillatory)
        } else if d < 0.0 {
            ((-d).sqrt(), Branch::Evanescent)
        } else {
            (0.0, Branch::Threshold)
        };
        Wavenumbers { k, q, branch }
    }

    /// Right-hand shape function `s(x)` on `[0, b]`, vanishing at `x = b`.
    pub fn right_shape(&self, b: f64, x: f64) -> f64 {
        match self.branch {
            Branch::Oscillatory => (self.q * (x - b)).sin(),
            Branch::Evanescent => (self.q * (b - x)).sinh(),
            Branch::Threshold => b - x,
        }
    }

    pub fn right_shape_derivative(&self, b: f64, x: f64) -> f64 {
        match self.branch {
            Branch::Oscillatory => self.q * (self.q * (x - b)).cos(),
            Branch::Evanescent => -self.q * (self.q * (b - x)).cosh(),
            Branch::Threshold => -1.0,
        }
    }

    /// `int_0^b s(x)^2 dx`.
    pub fn right_norm(&self, b: f64) -> f64 {
        match self.branch {
            Branch::Oscillatory => sin_sq_integral(self.q, b),
            Branch::Evanescent => sinh_sq_integral(self.q, b),
            Branch::Threshold => b * b * b / 3.0,
        }
    }

    /// `int_{-a}^0 sin^2(k (x + a)) dx`.
    pub fn left_norm(&self, a: f64) -> f64 {
        sin_sq_integral(self.k, a)
    }
}

/// Regularized eigenvalue condition; its zeros in `E > 0` are the bound-state energies.
///
/// For evanescent arguments deep enough that `cosh(qbar b)` would overflow,
/// the value is divided by `cosh(qbar b)`; the sign, and hence the roots,
/// are unchanged.
pub fn characteristic(spec: &WellSpec, energy: f64) -> Result<f64> {
    spec.require_step()?;
    if !(energy.is_finite() && energy > 0.0) {
        return Err(WellError::InvalidArgument(format!(
            "energy must be positive, got {energy}"
        )));
    }
    Ok(characteristic_unchecked(spec, energy))
}

pub(crate) fn characteristic_unchecked(spec: &WellSpec, energy: f64) -> f64 {
    let (a, b) = (spec.a, spec.b);
    let w = Wavenumbers::at(spec, energy);
    let (ka_sin, ka_cos) = (w.k * a).sin_cos();
    match w.branch {
        Branch::Oscillatory => {
            let qb = w.q * b;
            w.k * ka_cos * b * sinc(qb) + qb.cos() * ka_sin
        }
        Branch::Threshold => w.k * ka_cos * b + ka_sin,
        Branch::Evanescent => {
            let qb = w.q * b;
            if qb > 700.0 {
                w.k * ka_cos * qb.tanh() / w.q + ka_sin
            } else {
                w.k * ka_cos * b * sinhc(qb) + qb.cosh() * ka_sin
            }
        }
    }
}

/// One normalized bound state of the step well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenState {
    /// 1-based index in order of increasing energy.
    pub n: usize,
    pub energy: f64,
    /// Left-side wavenumber `sqrt(E)`.
    pub k: f64,
    /// `q = sqrt(E - v0)` or `qbar = sqrt(v0 - E)`, as tagged by `branch`.
    pub q: f64,
    pub branch: Branch,
    /// Left amplitude `A`, always positive.
    pub amp_left: f64,
    /// Right amplitude `B` (coefficient of the branch's shape function).
    pub amp_right: f64,
    pub spec: WellSpec,
}

impl EigenState {
    pub(crate) fn wavenumbers(&self) -> Wavenumbers {
        Wavenumbers {
            k: self.k,
            q: self.q,
            branch: self.branch,
        }
    }

    pub fn is_above_threshold(&self) -> bool {
        self.branch == Branch::Oscillatory
    }

    /// Wavefunction at `x`, which must lie in `[-a, b]`.
    pub fn psi(&self, x: f64) -> Result<f64> {
        self.spec.check_inside(x)?;
        Ok(self.psi_unchecked(x))
    }

    pub(crate) fn psi_unchecked(&self, x: f64) -> f64 {
        if x <= 0.0 {
            self.amp_left * (self.k * (x + self.spec.a)).sin()
        } else {
            self.amp_right * self.wavenumbers().right_shape(self.spec.b, x)
        }
    }

    /// First derivative; at `x = 0` the left-hand limit is returned.
    pub fn psi_derivative(&self, x: f64) -> Result<f64> {
        self.spec.check_inside(x)?;
        Ok(if x <= 0.0 {
            self.amp_left * self.k * (self.k * (x + self.spec.a)).cos()
        } else {
            self.amp_right * self.wavenumbers().right_shape_derivative(self.spec.b, x)
        })
    }

    /// One-sided values `(psi(0-), psi(0+), psi'(0-), psi'(0+))`.
    pub fn matching_values(&self) -> (f64, f64, f64, f64) {
        let w = self.wavenumbers();
        let (s, c) = (self.k * self.spec.a).sin_cos();
        (
            self.amp_left * s,
            self.amp_right * w.right_shape(self.spec.b, 0.0),
            self.amp_left * self.k * c,
            self.amp_right * w.right_shape_derivative(self.spec.b, 0.0),
        )
    }

    /// Interior nodes counted by sign changes on `samples` evenly spaced interior points.
    pub fn interior_nodes(&self, samples: usize) -> usize {
        let (a, l) = (self.spec.a, self.spec.width());
        let step = l / (samples + 1) as f64;
        roots::count_sign_changes((1..=samples).map(|i| self.psi_unchecked(-a + step * i as f64)))
    }
}

/// Assigns amplitudes to the state at a root of the characteristic function.
///
/// Of the two matching conditions at the origin (`psi` and `psi'`), the one
/// whose right-hand coefficient is larger fixes `B / A`; the other is then
/// checked as a residual. `A` is chosen positive and both are scaled to unit norm.
pub fn normalize(spec: &WellSpec, n: usize, energy: f64) -> Result<EigenState> {
    spec.require_step()?;
    if !(energy.is_finite() && energy > 0.0) {
        return Err(WellError::InvalidArgument(format!(
            "energy must be positive, got {energy}"
        )));
    }
    let w = Wavenumbers::at(spec, energy);
    let (ka_sin, ka_cos) = (w.k * spec.a).sin_cos();
    let (left_val, left_der) = (ka_sin, w.k * ka_cos);
    let right_val = w.right_shape(spec.b, 0.0);
    let right_der = w.right_shape_derivative(spec.b, 0.0);

    let by_value = right_val.abs() >= right_der.abs() / w.k;
    let ratio = if by_value {
        left_val / right_val
    } else {
        left_der / right_der
    };
    if !ratio.is_finite() {
        return Err(WellError::DegenerateMatching(energy));
    }
    // Residual of the condition not used above, on the scale of the left wave.
    let residual = if by_value {
        (left_der - ratio * right_der).abs() / w.k
    } else {
        (left_val - ratio * right_val).abs()
    };
    let scale = 1.0f64.max(ratio.abs() * right_val.abs().max(right_der.abs() / w.k));
    if residual > 1e-6 * scale {
        return Err(WellError::DegenerateMatching(energy));
    }

    let norm = w.left_norm(spec.a) + ratio * ratio * w.right_norm(spec.b);
    let amp_left = 1.0 / norm.sqrt();
    Ok(EigenState {
        n,
        energy,
        k: w.k,
        q: w.q,
        branch: w.branch,
        amp_left,
        amp_right: ratio * amp_left,
        spec: *spec,
    })
}

/// Every bound state with energy in `(0, e_max]`, ordered by energy.
///
/// Roots are bracketed on a uniform scan and bisected to machine
/// resolution. Each state must have `n - 1` interior nodes; if one does not,
/// the scan is repeated on a finer grid, and after several refinements the
/// offending interval is reported.
pub fn find_spectrum(spec: &WellSpec, e_max: f64) -> Result<Vec<EigenState>> {
    spec.require_step()?;
    if !(e_max.is_finite() && e_max > 0.0) {
        return Err(WellError::InvalidArgument(format!(
            "e_max must be positive, got {e_max}"
        )));
    }
    let start = roots::scan_start(spec);
    if e_max <= start {
        return Ok(Vec::new());
    }
    let base_step = roots::scan_step(spec);
    let g = |e: f64| characteristic_unchecked(spec, e);

    let mut failure = None;
    for refinement in 0..6 {
        let step = base_step / f64::from(1u32 << refinement);
        let energies: Vec<f64> = roots::bracket(g, start, e_max, step)
            .into_iter()
            .map(|(lo, hi)| roots::bisect(g, lo, hi, 0.0))
            .collect();
        match build_states(spec, &energies, start) {
            Ok(states) => return Ok(states),
            Err(err @ WellError::NodeCount { .. }) => failure = Some(err),
            Err(err) => return Err(err),
        }
    }
    Err(failure.expect("at least one scan was attempted"))
}

/// States with indices `1..=n_max`.
pub fn lowest_states(spec: &WellSpec, n_max: usize) -> Result<Vec<EigenState>> {
    // Raising the whole floor to v0 bounds E_n from above.
    let l = spec.width();
    let e_cap = (n_max as f64 * std::f64::consts::PI / l).powi(2) + spec.v0 + 1.0;
    let mut states = find_spectrum(spec, e_cap)?;
    states.truncate(n_max);
    Ok(states)
}

fn build_states(spec: &WellSpec, energies: &[f64], start: f64) -> Result<Vec<EigenState>> {
    let mut states = Vec::with_capacity(energies.len());
    let mut prev = start;
    for (i, &energy) in energies.iter().enumerate() {
        let n = i + 1;
        let state = normalize(spec, n, energy)?;
        let samples = 2000.max(50 * n);
        let found = state.interior_nodes(samples);
        if found != n - 1 {
            return Err(WellError::NodeCount {
                n,
                found,
                expected: n - 1,
                lo: prev,
                hi: energy,
            });
        }
        prev = energy;
        states.push(state);
    }
    Ok(states)
}

/// Closed-form `(P_left, P_right)` for a normalized state.
pub fn side_probabilities(state: &EigenState) -> (f64, f64) {
    let w = state.wavenumbers();
    let left = state.amp_left.powi(2) * w.left_norm(state.spec.a);
    let right = state.amp_right.powi(2) * w.right_norm(state.spec.b);
    (left, right)
}

/// How the two half-wells join at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchKind {
    NearNode,
    NearAntinode,
    Generic,
}

impl MatchKind {
    pub fn name(&self) -> &'static str {
        match self {
            MatchKind::NearNode => "near_node",
            MatchKind::NearAntinode => "near_antinode",
            MatchKind::Generic => "generic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchClass {
    pub kind: MatchKind,
    /// `|psi(0)| / max |psi|` over the left side.
    pub node_metric: f64,
    /// `|psi'(0)| / (k max |psi|)` over the left side.
    pub antinode_metric: f64,
}

pub const DEFAULT_MATCH_THRESHOLD: f64 = 0.1;

/// Classifies the junction at `x = 0` of an above-threshold state.
pub fn classify_matching(state: &EigenState, threshold: f64) -> Result<MatchClass> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(WellError::InvalidArgument(format!(
            "threshold must lie in (0, 1), got {threshold}"
        )));
    }
    if !state.is_above_threshold() {
        return Err(WellError::BelowThreshold {
            energy: state.energy,
            v0: state.spec.v0,
        });
    }
    let ka = state.k * state.spec.a;
    let (s, c) = ka.sin_cos();
    // max |sin(k(x + a))| on [-a, 0]
    let left_max = if ka >= FRAC_PI_2 { 1.0 } else { s.abs() };
    let node_metric = (s.abs() / left_max).min(1.0);
    let antinode_metric = (c.abs() / left_max).min(1.0);
    let kind = if antinode_metric < threshold {
        MatchKind::NearAntinode
    } else if node_metric < threshold {
        MatchKind::NearNode
    } else {
        MatchKind::Generic
    };
    Ok(MatchClass {
        kind,
        node_metric,
        antinode_metric,
    })
}

//! Closed-form limits on the quantum left-side probability above the step.
//!
//! Matching at an antinode forces `|A| = |B|` and gives `a / (a + b)`;
//! matching at a node forces `k|A| = q|B|` and gives
//! `a / (a + b E / (E - v0))`. The classical value always lies between them.

use serde::Serialize;

use crate::error::{Result, WellError};
use crate::potential::WellSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPair {
    /// Node-matching value.
    pub lower: f64,
    /// Antinode-matching value.
    pub upper: f64,
    pub energy: f64,
    pub spec: WellSpec,
}

impl BoundPair {
    /// Whether `p` lies in `[lower - tol, upper + tol]`.
    pub fn contains(&self, p: f64, tol: f64) -> bool {
        p >= self.lower - tol && p <= self.upper + tol
    }
}

const THRESHOLD_MARGIN: f64 = 1e-12;

pub fn bounds_at(spec: &WellSpec, energy: f64) -> Result<BoundPair> {
    spec.require_step()?;
    let (a, b, v0) = (spec.a, spec.b, spec.v0);
    if !(energy.is_finite() && energy > v0 && energy - v0 > THRESHOLD_MARGIN * energy) {
        return Err(WellError::BelowThreshold { energy, v0 });
    }
    let upper = a / (a + b);
    let lower = a / (a + b * energy / (energy - v0));
    Ok(BoundPair {
        lower,
        upper,
        energy,
        spec: *spec,
    })
}

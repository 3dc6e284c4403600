//! The asymmetric infinite well and its smoothed variants.
//!
//! Natural units throughout: `hbar = 2m = 1`, so `E = k^2` and the
//! Schrödinger equation reads `psi'' = (V - E) psi`. The well occupies
//! `[-a, b]` with hard walls outside; the floor is `0` on the left and
//! `v0` on the right, joined either by a discontinuous step or by one of
//! two smoothing ramps centred on `x = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WellError};

/// How the floor rises from `0` to `v0` around the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Smoothing {
    /// Discontinuous step at `x = 0`.
    None,
    /// `v0 / (1 + exp(-x / delta))`.
    Exponential { delta: f64 },
    /// Linear ramp from `0` at `-epsilon` to `v0` at `+epsilon`.
    Linear { epsilon: f64 },
}

impl Smoothing {
    pub fn is_step(&self) -> bool {
        matches!(self, Smoothing::None)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Smoothing::None => "none",
            Smoothing::Exponential { .. } => "exponential",
            Smoothing::Linear { .. } => "linear",
        }
    }
}

/// Potential value at a point: finite inside the well, a hard wall outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialValue {
    Finite(f64),
    Infinite,
}

impl PotentialValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            PotentialValue::Finite(v) => Some(v),
            PotentialValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, PotentialValue::Infinite)
    }
}

/// Geometry, step height and smoothing of the well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellSpec {
    pub a: f64,
    pub b: f64,
    pub v0: f64,
    pub smoothing: Smoothing,
}

impl WellSpec {
    /// Discontinuous step well on `[-a, b]`.
    pub fn new(a: f64, b: f64, v0: f64) -> Result<Self> {
        Self::with_smoothing(a, b, v0, Smoothing::None)
    }

    pub fn with_smoothing(a: f64, b: f64, v0: f64, smoothing: Smoothing) -> Result<Self> {
        let spec = WellSpec {
            a,
            b,
            v0,
            smoothing,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `a = b = 3`, `v0 = 20`: the parameter set used for every published number.
    pub fn standard() -> Self {
        WellSpec {
            a: 3.0,
            b: 3.0,
            v0: 20.0,
            smoothing: Smoothing::None,
        }
    }

    /// Same geometry with a different smoothing.
    pub fn smoothed(&self, smoothing: Smoothing) -> Result<Self> {
        Self::with_smoothing(self.a, self.b, self.v0, smoothing)
    }

    /// Same geometry and height with the step restored.
    pub fn as_step(&self) -> Self {
        WellSpec {
            smoothing: Smoothing::None,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(WellError::InvalidSpec(msg));
        if !(self.a.is_finite() && self.a > 0.0) {
            return bad(format!("a must be positive, got {}", self.a));
        }
        if !(self.b.is_finite() && self.b > 0.0) {
            return bad(format!("b must be positive, got {}", self.b));
        }
        if !(self.v0.is_finite() && self.v0 >= 0.0) {
            return bad(format!("v0 must be non-negative, got {}", self.v0));
        }
        match self.smoothing {
            Smoothing::None => {}
            Smoothing::Exponential { delta } => {
                if !(delta.is_finite() && delta > 0.0) {
                    return bad(format!("delta must be positive, got {delta}"));
                }
            }
            Smoothing::Linear { epsilon } => {
                if !(epsilon.is_finite() && epsilon > 0.0) {
                    return bad(format!("epsilon must be positive, got {epsilon}"));
                }
                if epsilon >= self.a.min(self.b) {
                    return bad(format!(
                        "epsilon = {epsilon} must stay inside the well (< min(a, b) = {})",
                        self.a.min(self.b)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.a + self.b
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= -self.a && x <= self.b
    }

    pub(crate) fn check_inside(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(WellError::OutsideWell {
                x,
                lo: -self.a,
                hi: self.b,
            })
        }
    }

    pub(crate) fn require_step(&self) -> Result<()> {
        if self.smoothing.is_step() {
            Ok(())
        } else {
            Err(WellError::SmoothedWell)
        }
    }

    /// Floor value for `x` in `[-a, b]`, ignoring the walls.
    pub fn floor(&self, x: f64) -> f64 {
        let v0 = self.v0;
        match self.smoothing {
            Smoothing::None => {
                if x < 0.0 {
                    0.0
                } else if x > 0.0 {
                    v0
                } else {
                    0.5 * v0
                }
            }
            Smoothing::Exponential { delta } => {
                let t = x / delta;
                if t >= 0.0 {
                    v0 / (1.0 + (-t).exp())
                } else {
                    let e = t.exp();
                    v0 * e / (1.0 + e)
                }
            }
            Smoothing::Linear { epsilon } => {
                if x <= -epsilon {
                    0.0
                } else if x >= epsilon {
                    v0
                } else {
                    0.5 * v0 * (1.0 + x / epsilon)
                }
            }
        }
    }
}

/// Potential at `x`; hard walls outside `[-a, b]`.
pub fn evaluate(spec: &WellSpec, x: f64) -> PotentialValue {
    if x < -spec.a || x > spec.b || x.is_nan() {
        PotentialValue::Infinite
    } else {
        PotentialValue::Finite(spec.floor(x))
    }
}

/// Ramp half-width giving the same slope at the origin as a sigmoid of width `delta`.
pub fn match_smoothings(delta: f64) -> Result<f64> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(WellError::InvalidArgument(format!(
            "delta must be positive, got {delta}"
        )));
    }
    Ok(2.0 * delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_with(s: Smoothing) -> WellSpec {
        WellSpec::with_smoothing(3.0, 3.0, 20.0, s).unwrap()
    }

    #[test]
    fn step_values() {
        let w = WellSpec::standard();
        assert_eq!(evaluate(&w, -1.0), PotentialValue::Finite(0.0));
        assert_eq!(evaluate(&w, 1.0), PotentialValue::Finite(20.0));
        assert_eq!(evaluate(&w, 0.0), PotentialValue::Finite(10.0));
        assert!(evaluate(&w, -3.0001).is_infinite());
        assert!(evaluate(&w, 3.0001).is_infinite());
        assert_eq!(evaluate(&w, 3.0), PotentialValue::Finite(20.0));
    }

    #[test]
    fn smoothed_examples() {
        let e = std_with(Smoothing::Exponential { delta: 0.2 });
        assert_eq!(evaluate(&e, 0.0).finite(), Some(10.0));
        let l = std_with(Smoothing::Linear { epsilon: 0.4 });
        assert!((evaluate(&l, 0.2).finite().unwrap() - 15.0).abs() < 1e-12);
        assert_eq!(evaluate(&l, -0.4).finite(), Some(0.0));
        assert_eq!(evaluate(&l, 0.5).finite(), Some(20.0));
    }

    #[test]
    fn matched_scales() {
        assert_eq!(match_smoothings(0.2).unwrap(), 0.4);
        assert_eq!(match_smoothings(0.5).unwrap(), 1.0);
        assert!(match_smoothings(0.0).is_err());

        // Slopes at the origin agree: v0/(4 delta) vs v0/(2 epsilon).
        let delta = 0.2;
        let e = std_with(Smoothing::Exponential { delta });
        let l = std_with(Smoothing::Linear {
            epsilon: match_smoothings(delta).unwrap(),
        });
        let h = 1e-6;
        let se = (e.floor(h) - e.floor(-h)) / (2.0 * h);
        let sl = (l.floor(h) - l.floor(-h)) / (2.0 * h);
        assert!((se - sl).abs() < 1e-6 * sl, "{se} vs {sl}");
        assert!((se - 20.0 / (4.0 * delta)).abs() < 1e-5);
    }

    #[test]
    fn sigmoid_tends_to_step() {
        let step = WellSpec::standard();
        for x in [-0.5, 0.5] {
            let mut last = f64::INFINITY;
            for delta in [0.1, 0.01, 0.001] {
                let e = std_with(Smoothing::Exponential { delta });
                let diff = (e.floor(x) - step.floor(x)).abs();
                // the sigmoid saturates to the step exactly in f64 once |x|/delta is large
                assert!(
                    diff < last || (diff == 0.0 && last == 0.0),
                    "x = {x}, delta = {delta}"
                );
                last = diff;
            }
        }
    }

    #[test]
    fn tiny_delta_does_not_overflow() {
        let e = std_with(Smoothing::Exponential { delta: 1e-6 });
        assert_eq!(e.floor(-3.0), 0.0);
        assert_eq!(e.floor(3.0), 20.0);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(WellSpec::new(0.0, 3.0, 20.0).is_err());
        assert!(WellSpec::new(3.0, -1.0, 20.0).is_err());
        assert!(WellSpec::new(3.0, 3.0, -1.0).is_err());
        assert!(
            WellSpec::with_smoothing(3.0, 3.0, 20.0, Smoothing::Exponential { delta: 0.0 })
                .is_err()
        );
        assert!(
            WellSpec::with_smoothing(1.0, 3.0, 20.0, Smoothing::Linear { epsilon: 1.0 }).is_err()
        );
        assert!(WellSpec::new(3.0, 3.0, 0.0).is_ok());
    }
}

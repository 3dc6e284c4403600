//! Time-of-flight position densities for a classical particle in the step well.
//!
//! With `m = 1/2` the speed at kinetic energy `T` is `2 sqrt(T)`. The density
//! on each side is constant and proportional to the time spent there.

use serde::Serialize;

use crate::error::{Result, WellError};
use crate::potential::WellSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalModel {
    pub energy: f64,
    pub spec: WellSpec,
    pub density_left: f64,
    pub density_right: f64,
    pub p_left: f64,
    pub p_right: f64,
    /// Round-trip time across the left side, `2a / v_L`.
    pub t_left: f64,
    /// Round-trip time across the right side; zero when the particle is confined left.
    pub t_right: f64,
}

/// Classical model at `energy`; undefined exactly at the step height.
pub fn classical_model(spec: &WellSpec, energy: f64) -> Result<ClassicalModel> {
    spec.require_step()?;
    if !(energy.is_finite() && energy > 0.0) {
        return Err(WellError::InvalidArgument(format!(
            "energy must be positive, got {energy}"
        )));
    }
    let (a, b, v0) = (spec.a, spec.b, spec.v0);
    let v_left = 2.0 * energy.sqrt();
    let t_left = 2.0 * a / v_left;

    if energy < v0 {
        return Ok(ClassicalModel {
            energy,
            spec: *spec,
            density_left: 1.0 / a,
            density_right: 0.0,
            p_left: 1.0,
            p_right: 0.0,
            t_left,
            t_right: 0.0,
        });
    }
    if energy == v0 {
        return Err(WellError::AtThreshold(v0));
    }

    let root_e = energy.sqrt();
    let root_k = (energy - v0).sqrt();
    let t_right = 2.0 * b / (2.0 * root_k);
    let denom = a * root_k + b * root_e;
    Ok(ClassicalModel {
        energy,
        spec: *spec,
        density_left: root_k / denom,
        density_right: root_e / denom,
        p_left: a * root_k / denom,
        p_right: b * root_e / denom,
        t_left,
        t_right,
    })
}

impl ClassicalModel {
    /// Density at `x` in `[-a, b]`. At `x = 0` the left value is returned.
    pub fn density(&self, x: f64) -> Result<f64> {
        self.spec.check_inside(x)?;
        Ok(if x <= 0.0 {
            self.density_left
        } else {
            self.density_right
        })
    }

    /// `P_L` from the ratio of traversal times, `T_L / (T_L + T_R)`.
    pub fn p_left_from_times(&self) -> f64 {
        self.t_left / (self.t_left + self.t_right)
    }
}

/// Free function form of [`ClassicalModel::density`].
pub fn classical_density(model: &ClassicalModel, x: f64) -> Result<f64> {
    model.density(x)
}

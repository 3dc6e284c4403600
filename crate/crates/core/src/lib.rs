//! Quantum and classical position distributions in an asymmetric infinite well.
//!
//! The well has hard walls at `x = -a` and `x = b` and a floor that rises from
//! `0` to `v0` at the origin, either as a sharp step or through a smooth ramp.
//! Units are natural (`hbar = 2m = 1`), so `E = k^2`.
//!
//! * [`spectrum`]: closed-form step-well eigenstates from the eigenvalue condition
//! * [`classical`]: time-of-flight densities and side probabilities
//! * [`bounds`]: node/antinode limits on the quantum left-side probability
//! * [`shooting`]: Numerov shooting for smoothed wells
//! * [`momentum`]: exact momentum-space densities
//! * [`report`]: table assembly and CSV/JSON emission behind the CLI

pub mod bounds;
pub mod classical;
pub mod error;
pub mod momentum;
pub mod potential;
pub mod report;
pub mod roots;
pub mod shooting;
pub mod spectrum;

pub use bounds::{bounds_at, BoundPair};
pub use classical::{classical_density, classical_model, ClassicalModel};
pub use error::{Result, WellError};
pub use momentum::{density_series, peak_separation, phi, MomentumDensity};
pub use potential::{evaluate, match_smoothings, PotentialValue, Smoothing, WellSpec};
pub use shooting::{
    find_spectrum_numeric, shoot, side_probability_numeric, GridSolution, DEFAULT_GRID,
};
pub use spectrum::{
    characteristic, classify_matching, find_spectrum, normalize, side_probabilities, Branch,
    EigenState, MatchClass, MatchKind, DEFAULT_MATCH_THRESHOLD,
};

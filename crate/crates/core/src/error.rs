use thiserror::Error;

/// Errors raised by the solvers and the report layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WellError {
    #[error("invalid well parameters: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation requires the discontinuous step well")]
    SmoothedWell,

    #[error("position {x} lies outside the well [{lo}, {hi}]")]
    OutsideWell { x: f64, lo: f64, hi: f64 },

    #[error("energy {energy} must lie strictly above the step height {v0}")]
    BelowThreshold { energy: f64, v0: f64 },

    #[error("classical density is singular at E = V0 = {0}")]
    AtThreshold(f64),

    #[error(
        "state {n} has {found} interior nodes (expected {expected}); \
         scan grid missed roots in [{lo}, {hi}]"
    )]
    NodeCount {
        n: usize,
        found: usize,
        expected: usize,
        lo: f64,
        hi: f64,
    },

    #[error("degenerate matching at E = {0}: psi(0) and psi'(0) both vanish (spurious root)")]
    DegenerateMatching(f64),

    #[error("no state with index {n} (only {available} found)")]
    UnknownState { n: usize, available: usize },

    #[error("{stage}: {message}")]
    Stage { stage: String, message: String },
}

pub type Result<T, E = WellError> = std::result::Result<T, E>;

//! Error type shared across the crate.

/// Failure modes of problem construction, optimization and parsing.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operand dimensions disagree with the problem or state.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An argument is outside its admissible range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance has no usable curvature (no nonzero eigenvalue).
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    /// An internal identity that must hold by construction failed,
    /// signalling corrupted instance data or broken invariants.
    #[error("internal consistency: {0}")]
    InternalConsistency(String),

    /// A schedule produced a coefficient outside its contract.
    #[error("schedule violation: {0}")]
    ScheduleViolation(String),

    /// Hyperparameters violate the convergence-regime constraints.
    #[error("hyperparameters rejected: {0}")]
    InvalidHyperparams(String),

    /// An iterate or estimator became non-finite.
    #[error("divergence at step {step}: non-finite {what}")]
    Divergence { step: u64, what: String },

    /// A configuration or instance file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

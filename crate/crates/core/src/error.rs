use thiserror::Error;

/// Errors shared by all map construction and evaluation paths.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    /// Evaluation requested at (or too close to) the preimage of infinity.
    #[error("evaluation at the pole preimage zeta = 1/lambda")]
    PoleInput,

    /// Point outside the domain of the map being evaluated.
    #[error("point outside the map domain: {0}")]
    DomainViolation(String),

    /// The requested circle pair violates e > 1 + r1.
    #[error("circles overlap or touch: need e > 1 + r1, got e = {e}, r1 = {r1}")]
    OverlappingCircles { e: f64, r1: f64 },

    /// Shape parameters outside their admissible range.
    #[error("invalid shape parameters: {0}")]
    BadShape(String),

    /// The root bracket for the hole-center equation contains no sign change.
    #[error("no root in bracket: {0}")]
    NoRoot(String),

    /// Iteration and bisection both exhausted their budgets.
    #[error("failed to converge: {0}")]
    NonConvergence(String),

    /// The outer-map derivative vanishes where a division by it is needed.
    #[error("outer-map derivative vanishes near w = {at}")]
    DegenerateDerivative { at: f64 },

    /// A closed form was requested for a map family it does not cover.
    #[error("closed form requires a straight-edged hypotrochoid outer map (m = 1/n^2)")]
    WrongFamily,

    /// A solver produced output that fails its own substitution check.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl MapError {
    /// Short stage name for diagnostics (stable across message wording).
    pub fn name(&self) -> &'static str {
        match self {
            MapError::PoleInput => "PoleInput",
            MapError::DomainViolation(_) => "DomainViolation",
            MapError::OverlappingCircles { .. } => "OverlappingCircles",
            MapError::BadShape(_) => "BadShape",
            MapError::NoRoot(_) => "NoRoot",
            MapError::NonConvergence(_) => "NonConvergence",
            MapError::DegenerateDerivative { .. } => "DegenerateDerivative",
            MapError::WrongFamily => "WrongFamily",
            MapError::Inconsistent(_) => "Inconsistent",
        }
    }
}

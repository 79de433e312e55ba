use alloc::string::String;

/// Everything that can go wrong while building or checking a partition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("points are not in general position")]
    Degenerate,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("point {index} lies on the apex flat")]
    PointOnFlat { index: usize },

    #[error("projected points do not lie in an open half-plane")]
    NotAFace,

    /// A stated hypothesis of a construction is violated; the message names it.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// The request is well-posed but outside what this library constructs.
    #[error("scope limit: {0}")]
    ScopeLimit(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("cannot perturb anchors within their bump balls; use a larger bump radius")]
    PerturbationFailed,

    #[error("enumeration exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("no ham-sandwich cut found")]
    NoCutFound,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("matrix for arrow `{0}` has the wrong shape")]
    ShapeMismatch(String),
    #[error("matrices live over different fields")]
    MixedFields,
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
    #[error("invalid winding: {0}")]
    InvalidWinding(String),
    #[error("invalid basis ordering: {0}")]
    InvalidOrdering(String),
    #[error("coefficient quiver is not a forest")]
    NotForest,
    #[error("triple does not satisfy t ∉ β and s ∈ β")]
    WrongMembership,
    #[error("dimension vector exceeds the fibre size at `{0}`")]
    DimensionTooLarge(String),
    #[error("enumeration needs {required} candidates but the cap is {cap}")]
    BudgetExceeded { required: u128, cap: u128 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("denominator divisible by the characteristic {0}")]
    BadDenominator(u64),
    #[error("representations are defined over different quivers")]
    QuiverMismatch,
    #[error("winding is not a weak polarization")]
    NotWeakPolarization,
    #[error("expected {expected} basis elements, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("gluing precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("glued winding is not a tree")]
    NotTreeAfterGlue,
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

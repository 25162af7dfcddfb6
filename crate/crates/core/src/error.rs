use thiserror::Error;

use crate::category::CategoryError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    BadCharacteristic(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid category: {}", join(.0))]
    InvalidCategory(Vec<CategoryError>),
    #[error("category is not EI: {0} is a non-invertible endomorphism")]
    NotEI(String),
    #[error("category is not skeletal: {0} and {1} are isomorphic")]
    NotSkeletal(String, String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("{0} is an isomorphism")]
    IsIsomorphism(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("structure maps are incompatible: {0}")]
    IncompatibleMaps(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("radical verification failed: {0}")]
    RadicalVerificationFailed(String),
    #[error("one-sided self-injective dimensions disagree: left {left}, right {right}")]
    ZaksViolation { left: usize, right: usize },
    #[error("algebra dimension {dim} exceeds the limit {limit}")]
    DimensionLimitExceeded { dim: usize, limit: usize },
    #[error("group action is not order preserving: {0}")]
    NotOrderPreserving(String),
    #[error("not an admissible order: {0}")]
    InvalidOrder(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("composition is not associative: {0}")]
    AssociativityFailure(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn join(errs: &[CategoryError]) -> String {
    errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

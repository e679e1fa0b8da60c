use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("uncovered variable `{0}`")]
    UncoveredVariable(String),
    #[error("sort mismatch for `{var}`: expected {expected}, found {found}")]
    SortMismatch { var: String, expected: String, found: String },
    #[error("inverted bounds: {0} > {1}")]
    InvertedBounds(i64, i64),
    #[error("time point {point} outside timeline [{lower}, {upper}]")]
    OutOfTimeline { point: i64, lower: i64, upper: i64 },
    #[error("invalid timeline: lower bound {0} exceeds upper bound {1}")]
    InvalidTimeline(i64, i64),
    #[error("non-ground formula `{0}`")]
    NonGround(String),
    #[error("`{0}` is not derivable")]
    NotDerivable(String),
    #[error("weight {0} outside [0,1]")]
    WeightRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{size} ground formulae exceed the bound of {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("unsupported custom component `{0}`: no monotonicity certificate")]
    UnsupportedComponent(String),
    #[error("invalid knowledge base: {0}")]
    InvalidKb(String),
    #[error("malformed pattern: {0}")]
    MalformedPattern(String),
}

pub type Result<T> = std::result::Result<T, Error>;

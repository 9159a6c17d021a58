use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {m} too small, need m >= {min}")]
    DimensionTooSmall { m: u32, min: u32 },

    #[error("{what} = {value} must be nonnegative")]
    NegativeInput { what: &'static str, value: f64 },

    #[error("{what} = {value} must be strictly positive")]
    NonpositiveInput { what: &'static str, value: f64 },

    #[error("surgery dimension k = {k} out of range 2..={max} for m = {m}")]
    SurgeryOutOfRange { m: u32, k: u32, max: u32 },

    #[error("exponent p = {p} must be >= 1")]
    ExponentTooSmall { p: f64 },

    #[error("invalid manifold: {0}")]
    InvalidManifold(String),

    #[error("vertex budget exceeded: {requested} vertices > budget {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },

    #[error("field length {got} does not match expected length {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("field vanishes identically")]
    ZeroField,

    #[error("field entry {index} too close to zero for finite differences")]
    FieldNearZero { index: usize },

    #[error("manifold document: {0}")]
    Document(String),

    #[error("product assumption violated: worst pair has {lhs} > {rhs}")]
    AssumptionViolated { lhs: f64, rhs: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition `{0}`: parts must be strictly decreasing positive integers")]
    InvalidPartition(String),

    #[error("partition {partition} has length {length} > n = {n}")]
    TooLong {
        partition: String,
        length: usize,
        n: usize,
    },

    #[error("n must be at least 1")]
    ZeroVariables,

    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,

    #[error("polynomial is not Q-symmetric")]
    NotQSymmetric,

    #[error("polynomial is not in the span of the basis (leading exponent {0:?})")]
    NotInSpan(Vec<u32>),

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),

    #[error("malformed polynomial JSON: {0}")]
    Json(String),

    #[error("dim P^{degree}(V) = {dimension} for n = {n} exceeds the size guard {guard}")]
    SizeGuard {
        n: usize,
        degree: u32,
        dimension: u128,
        guard: u128,
    },

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("operator does not act by a scalar: {0}")]
    NonScalar(String),

    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("interpolation inconsistency: {0}")]
    Interpolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

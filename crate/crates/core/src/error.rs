use thiserror::Error;

/// Errors produced by the polynomial ring, the matrix kernels and the
/// identity registry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no exact quotient exists: {0}")]
    NotDivisible(String),
    #[error("substituting into a negative q power requires a unit monomial value")]
    NonInvertibleSubstitution,
    #[error("q = 0 meets a negative q exponent")]
    ZeroDenominator,
    #[error("sequence index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("closed-form coefficient is not an integer: {0}")]
    NonIntegerCoefficient(String),
    #[error("matrix dimensions do not agree: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("cofactor expansion is limited to dimension {limit}, got {got}")]
    TooLarge { limit: usize, got: usize },
    #[error("matrix is not lower Hessenberg: nonzero entry at ({0}, {1})")]
    NotHessenberg(usize, usize),
    #[error("interior division failed during fraction-free elimination: {0}")]
    InternalDivisionFailure(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

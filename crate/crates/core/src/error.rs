use thiserror::Error;

/// Errors raised by the computational kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("too many variables: {0} (at most {max})", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero point")]
    ZeroPoint,
    #[error("characteristic 2 is not supported here")]
    Characteristic2,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("singular hypersurface: {0}")]
    Singular(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("divisor not rationally resolvable: {0}")]
    NotRational(String),
    #[error("odd intersection multiplicity {mult} at {point}")]
    OddMultiplicity { point: String, mult: usize },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("infeasible linear system: {0}")]
    Infeasible(String),
    #[error("retries exhausted after {0} attempts: {1}")]
    RetriesExhausted(usize, String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

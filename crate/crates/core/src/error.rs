use thiserror::Error;

/// Errors raised by the algebra in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("coefficient ring mismatch: {lhs} vs {rhs}")]
    RingMismatch { lhs: String, rhs: String },

    #[error("polynomial must have zero constant term, got {0}")]
    NonzeroConstantTerm(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("invalid resolution: {0}")]
    InvalidResolution(String),

    #[error("unsupported differential: only d = 2*I is supported")]
    UnsupportedDifferential,

    #[error("linking form is singular: det b = {0}")]
    SingularForm(String),

    #[error("invalid linking form: {0}")]
    InvalidForm(String),

    #[error("generator precondition violated: need p(0) = 0 or g(0) = 0 (p = {p}, g = {g})")]
    GeneratorPrecondition { p: String, g: String },

    #[error("not a sublagrangian: {reason} (vector {vector})")]
    NotSublagrangian { vector: String, reason: String },

    #[error("submodule is not a direct summand: {0}")]
    NotDirectSummand(String),

    #[error("linking form is not even: b(e{0}, e{0}) is not integral")]
    OddForm(usize),

    #[error("unsupported generator shape: {0}")]
    UnsupportedShape(String),

    #[error("search space too large: {0}")]
    TooLarge(String),

    #[error("n > 3 required, got {0}")]
    InvalidDimension(i64),

    #[error("chain script: {0}")]
    Script(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

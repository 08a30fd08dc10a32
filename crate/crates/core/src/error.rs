use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arithmetic requires finite intervals, got [{lo}, {hi}]")]
    ExtendedArithmetic { lo: f64, hi: f64 },

    #[error("invalid interval: lo = {lo} > hi = {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("infimum/supremum of an empty family is undefined")]
    EmptyFamily,

    #[error("point {0:?} is outside the function domain")]
    OutOfDomain(Vec<f64>),

    #[error("functions are defined on different domains")]
    DomainMismatch,

    #[error("unknown corpus entry '{0}'")]
    UnknownCorpusEntry(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("endpoint order violated at y = {point:?}: lower = {lower} > upper = {upper}")]
    EndpointOrderViolation {
        point: Vec<f64>,
        lower: f64,
        upper: f64,
    },

    #[error("non-finite endpoint value at y = {point:?}")]
    NonFiniteValue { point: Vec<f64> },

    #[error("pieces do not cover the domain near y = {0:?}")]
    CoverageGap(Vec<f64>),

    #[error("pieces disagree at shared point y = {point:?}: {a:?} vs {b:?}")]
    PieceDisagreement {
        point: Vec<f64>,
        a: (f64, f64),
        b: (f64, f64),
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certified bound violated: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

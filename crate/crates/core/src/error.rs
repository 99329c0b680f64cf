use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown algebra `{name}`; valid names are: {valid}")]
    UnknownAlgebra { name: String, valid: String },

    #[error("algebra `{0}` needs an exact rational value of sigma^2")]
    MissingSigmaSquared(String),

    #[error("label `{0}` does not belong to this algebra")]
    ForeignLabel(String),

    #[error("label index {0} is out of range for this algebra")]
    ForeignIndex(usize),

    #[error("operands belong to different Itô algebras")]
    AlgebraMismatch,

    #[error("multi-tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("basis change matrix is singular")]
    SingularMatrix,

    #[error("basis change determinant `{0}` is not invertible in the coefficient ring")]
    NonUnitDeterminant(String),

    #[error("basis change must map the time differential to itself")]
    TimeNotFixed,

    #[error("invalid basis change: {0}")]
    InvalidBasisChange(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("descent statistics need a nonempty sequence")]
    EmptySequence,

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("permutation {0} is not forth-back")]
    NotForthBack(String),

    #[error("permutation {0} has no transit")]
    NoTransit(String),

    #[error("oracle order {n} exceeds the limit {limit}; the double sum has about {pairs} permutation pairs")]
    OracleLimit { n: usize, limit: usize, pairs: String },

    #[error("invalid interval: need a < b, got a = {a}, b = {b}")]
    InvalidInterval { a: String, b: String },

    #[error("sigma must be at least 1, got {0}")]
    InvalidSigma(String),

    #[error("method `{method}` is not available for this area: {reason}")]
    MethodUnavailable { method: String, reason: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity error: {0}")]
    Arity(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("negative exponent at {0}")]
    NegativeExponent(usize),
    #[error("invalid complex: {}", .0.join("; "))]
    InvalidComplex(Vec<String>),
    #[error("not a face: {0:?}")]
    NotAFace(Vec<u32>),
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),
    #[error("invalid weight point: {0}")]
    InvalidPoint(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("ideal is not primary for the maximal ideal")]
    NotPrimary,
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}

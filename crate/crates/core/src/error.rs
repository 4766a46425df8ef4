use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different ring contexts")]
    ContextMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}` in ring context")]
    DuplicateVariable(String),

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not homogeneous")]
    Inhomogeneous,

    #[error("matrix body is singular")]
    SingularBody,

    #[error("matrix is not a nilpotent perturbation of its scalar body")]
    NotNilpotent,

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid flag type: {0}")]
    InvalidFlagType(String),

    #[error("invalid index sets: {0}")]
    InvalidIndexSets(String),

    #[error("element is not in the {0}")]
    NotMember(String),

    #[error("bracket leaves the span of the basis: {0}")]
    NotClosed(String),

    #[error("unexpected dominant weight {0}")]
    UnexpectedDominantWeight(String),

    #[error("config error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        message: String,
    },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }
}

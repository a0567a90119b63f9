use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree}, expected 4")]
    NonQuadrivalent { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("cycles live on different graphs")]
    GraphMismatch,
    #[error("not a framing: {0}")]
    NotAFraming(String),
    #[error("inconsistent spine complex: {0}")]
    InconsistentComplex(String),
    #[error("dualization failed: {0}")]
    DualizationFailure(String),
    #[error("not a manifold: {0}")]
    NotAManifold(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedInput(msg.into())
    }
}

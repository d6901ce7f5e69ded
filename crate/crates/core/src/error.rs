use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex count {0} outside supported range 1..={max}", max = crate::MAX_VERTICES)]
    VertexCount(usize),

    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("vertex set must be a proper nonempty subset")]
    ImproperSet,

    #[error("source and sink must differ (both {0})")]
    SameEndpoints(usize),

    #[error("{what} supports at most {max} vertices, got {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed certificate: {0}")]
    Certificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("generation stalled: {0}")]
    Generation(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

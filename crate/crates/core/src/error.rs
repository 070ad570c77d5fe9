use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("marker {0} occurs twice")]
    DuplicateMarker(String),
    #[error("empty chromosome")]
    EmptyChromosome,
    #[error("adjacency {0} is not in the genome")]
    MissingAdjacency(String),
    #[error("invalid operation: {0}")]
    InvalidOperation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unoriented: open problem ({0})")]
    Unoriented(String),
    #[error("oracle cap exceeded: {0}")]
    CapExceeded(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("inconsistent distance function: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Errors that reflect a limit of the method rather than a malformed input.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Unoriented(_) | Error::CapExceeded(_) | Error::Refused(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

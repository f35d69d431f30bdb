use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text; `line` is 1-based (0 when the input is a single token).
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Whitehead pair: {0}")]
    InvalidPair(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    /// A candidate move left every entry of the implemented norm prefix unchanged.
    #[error("tie at bound: {0}")]
    TieAtBound(String),

    #[error("undecided at bound: {0}")]
    Undecided(String),

    #[error("no certified commuting multiplier assignment of size {0}")]
    NoCertifiedAssignment(usize),

    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

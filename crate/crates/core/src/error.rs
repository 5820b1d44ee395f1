use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("number at offset {pos} does not fit in 32 bits")]
    NatOverflow { pos: usize },

    #[error("invalid letter {found:?} at offset {pos}; words are spelled with 'a' and 'b'")]
    InvalidLetter { pos: usize, found: char },

    #[error("word `{0}` is not pseudonull")]
    NotPseudonull(String),

    #[error("{what}: length {len} exceeds the configured bound {bound}")]
    TooLong {
        what: &'static str,
        len: usize,
        bound: usize,
    },

    #[error("position sets refer to different words")]
    MismatchedWords,

    #[error("position {index} is out of range for a word of length {len}")]
    PositionOutOfRange { index: usize, len: usize },

    #[error("split position {k} is out of range for a word of length {len}")]
    InvalidSplit { k: usize, len: usize },

    #[error("grouping {grouping} does not apply to a {constructor} node")]
    GroupingMismatch {
        grouping: &'static str,
        constructor: &'static str,
    },

    #[error("invalid grouping sizes: {0}")]
    InvalidSizes(String),

    #[error("no subterm at path {0:?}")]
    BadPath(Vec<usize>),

    #[error("repetition count must be at least 1")]
    ZeroRepetitions,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code for the command-line contract: 2 for malformed
    /// input, 3 for broken internal invariants, 4 for refused sizes.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooLong { .. } => 4,
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid bit character {found:?} at offset {offset}")]
    InvalidBit { offset: usize, found: char },

    #[error("block size must be at least 1")]
    ZeroBlockSize,

    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("invalid size bounds low={low}, high={high}: need low >= 1 and high >= 2 * low")]
    InvalidBounds { low: usize, high: usize },

    #[error("path {path:?} does not name a node")]
    InvalidPath { path: Vec<usize> },

    #[error("bit offset {0} is not the start of a node description")]
    NotANodePosition(usize),

    #[error("node at offset {pos} has {children} children, no child {index}")]
    NoSuchChild { pos: usize, index: usize, children: usize },

    #[error("the root has no parent")]
    RootHasNoParent,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letters do not form a permutation of 1..{len}")]
    NotAPermutation { len: usize },
    #[error("word repeats the letter at position {position}")]
    DuplicateLetter { position: usize },
    #[error("position {index} is outside 1..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index set is not strictly increasing")]
    NotStrictlyIncreasing,
    #[error("coefficient overflowed 64 bits")]
    Overflow,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("odd length {0}")]
    OddLength(usize),
    #[error("letter at position {position} is neither the current minimum nor maximum")]
    NotInImage { position: usize },
    #[error("{what} of size {size} exceeds the configured bound {limit}")]
    ResourceLimit { what: &'static str, size: usize, limit: usize },
    #[error("matching on a host of odd size {0}")]
    OddHost(usize),
    #[error("position {0} is used by more than one arc")]
    DuplicatePosition(usize),
    #[error("arc ({0}, {0}) is a loop")]
    Loop(usize),
    #[error("matching is not perfect: position {0} is unmatched")]
    NotPerfect(usize),
    #[error("pattern of size {pattern} is larger than text of size {text}")]
    PatternLargerThanText { pattern: usize, text: usize },
    #[error("index set is not an occurrence of the pattern")]
    InvalidOccurrence,
    #[error("not a binary letter: {0}")]
    NotBinary(u8),
}

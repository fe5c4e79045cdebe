use thiserror::Error;

/// Errors produced by the sequence, codec, transform and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence length {0} outside supported range 1..={max}", max = crate::seq::MAX_LEN)]
    BadLength(usize),

    #[error("invalid sequence character {0:?} (expected '+' or '-')")]
    BadSymbol(char),

    #[error("invalid sign {0} (expected +1 or -1)")]
    BadSign(i32),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("alpha requires an odd length >= 3, got {0}")]
    AlphaLength(usize),

    #[error("quad {index} of the pair has no label")]
    UnlabeledQuad { index: usize },

    #[error("bad digit {digit:?} at position {position}")]
    BadDigit { digit: char, position: usize },

    #[error("malformed code {0:?}: {1}")]
    MalformedCode(String, &'static str),

    #[error("quadruple is not near-normal")]
    NotNearNormal,

    #[error("quadruple does not satisfy the base-sequence identity (first defect at lag {lag})")]
    NotBaseSequences { lag: usize },

    #[error("group action requires m != n (got m = n = {0})")]
    EqualLengths(usize),

    #[error("orbit exceeded the limit of {0} elements")]
    OrbitTooLarge(usize),

    #[error("n = {0} must be even and at least 2")]
    BadOrder(usize),

    #[error("n = {0} exceeds the exhaustive search limit of {max}", max = crate::classify::MAX_SEARCH_N)]
    ResourceGuard(usize),

    #[error("no table rows for n = {0}")]
    UnknownTableSize(usize),

    #[error("table data: {0}")]
    TableData(String),

    #[error("canonical reps are not closed under moves: {0} canonicalizes outside the set")]
    NotClosed(String),

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

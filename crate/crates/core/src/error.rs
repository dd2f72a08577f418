use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid space: n={n}, q={q}")]
    InvalidSpace { n: usize, q: usize },

    #[error("space mismatch: ({n1},{q1}) vs ({n2},{q2})")]
    SpaceMismatch {
        n1: usize,
        q1: usize,
        n2: usize,
        q2: usize,
    },

    #[error("symbol {symbol} at position {position} is out of range for q={q}")]
    SymbolOutOfRange {
        position: usize,
        symbol: usize,
        q: usize,
    },

    #[error("word has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operation requires a binary space (q=2), got q={0}")]
    NotBinary(usize),

    #[error("radius {r} exceeds length {n}")]
    RadiusTooLarge { r: usize, n: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("set is not closed under addition")]
    NotAGroup,

    #[error("mixed parity input")]
    MixedParity,

    #[error("input is not a unitrade: ball centered at {witness} meets it in {count} words")]
    NotUnitrade { witness: String, count: usize },

    #[error("empty code")]
    EmptyCode,

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("embedded data self-check failed: {0}")]
    SelfCheck(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;

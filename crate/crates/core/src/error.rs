use thiserror::Error;

/// Errors raised by the word calculus, the exact algebra and the sphere oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter `{token}` occurs {count} time(s); every letter must occur exactly twice")]
    LetterCount { token: String, count: usize },

    #[error("empty token at field {index} of `{input}`")]
    EmptyToken { input: String, index: usize },

    #[error("invalid character `{0}` in word; use a-z or comma-separated tokens")]
    InvalidCharacter(char),

    #[error("size {requested} exceeds the configured cap {cap}")]
    SizeLimit { requested: usize, cap: usize },

    #[error("unsupported render format `{0}`")]
    UnsupportedFormat(String),

    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },

    #[error("link pairs share position {0}")]
    Overlap(usize),

    #[error("linking τ({k}) on the right half closed {circles} circle(s)")]
    CircleUnexpected { k: usize, circles: usize },

    #[error("denominator vanishes at n = {0}")]
    Pole(i64),

    #[error("linear system is singular")]
    SingularSystem {
        /// A nonzero vector in the kernel of the coefficient matrix, rendered as strings.
        kernel: Vec<String>,
    },

    #[error("linear system has no solution")]
    Inconsistent,

    #[error("polynomial is not graded like a reduced word of half-length {k}: {reason}")]
    Grade { k: usize, reason: String },

    #[error("target is not an exact multiple of the conjectured product")]
    NotDivisible,

    #[error("eigenfunction vanishes at the chosen sphere point")]
    BasePoint,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integer coefficient overflow in sphere polynomial arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

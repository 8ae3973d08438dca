use thiserror::Error;

/// Errors raised while building, combining or querying automata.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("signature error: {0}")]
    Signature(String),
    #[error("digit {digit} out of range for track `{track}` (base {base})")]
    DigitOutOfRange { track: String, base: u8, digit: u8 },
    #[error("regex error at offset {offset}: {message}")]
    Regex { offset: usize, message: String },
    #[error("unknown track `{0}`")]
    UnknownTrack(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("arity mismatch calling `{name}`: expected {expected}, got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("base mismatch for `{name}`: {first} vs {second}")]
    BaseMismatch { name: String, first: u8, second: u8 },
    #[error("sentence has free variables: {0:?}")]
    FreeVariables(Vec<String>),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("automaton format error on line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("`{0}` is a heavy construction; pass the allow-heavy opt-in to build it")]
    HeavyRefused(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("linear representation did not stabilize within {0} padding steps")]
    NoStabilization(usize),
    #[error("statement `{name}` on line {line}: {source}")]
    Statement {
        name: String,
        line: usize,
        source: Box<Error>,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

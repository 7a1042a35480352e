use thiserror::Error;

/// Errors raised by the algebra kernel and the verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different rings, modules of different rank, or have
    /// mismatched shapes.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("matrix is not homogeneous: entry ({row}, {col}) {detail}")]
    NotHomogeneous {
        row: usize,
        col: usize,
        detail: String,
    },

    /// A relation column of a subquotient is not in the generator span.
    #[error("relation column {column} does not lie in the generator span")]
    RelationNotInSpan { column: usize },

    #[error("map is not well defined: image of {kind} column {column} is not in the target {kind} span")]
    MapNotWellDefined { kind: &'static str, column: usize },

    #[error("composite of consecutive maps is nonzero at position {position}")]
    NotAComplex { position: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("random rank evaluations disagree ({0}); retry with the deterministic minor-based rank")]
    RankDisagreement(String),

    /// A certified identity failed; indicates a bug, never silently ignored.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// The scenario violates the standing hypothesis grade I_M = r + 1.
    #[error("scenario refused: {0}")]
    Refused(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

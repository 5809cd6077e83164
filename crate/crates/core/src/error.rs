use thiserror::Error;

/// A malformed textual input, with the 1-based line number when known.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            message: message.into(),
        }
    }

    pub fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("size budget exceeded: {needed} > {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("point is not on the required face: {0}")]
    FaceMembership(String),
    #[error("not an integral vertex: {0}")]
    NotAVertex(String),
    #[error("objective is not balanced in column {column}")]
    Unbalanced { column: usize },
    #[error("instance is outside the polynomial subclass (V-vertex {column})")]
    OutsideSubclass { column: usize },
    #[error("LP was {0}")]
    Lp(&'static str),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

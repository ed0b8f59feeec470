use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid graph operation: {0}")]
    Graph(String),
    #[error("faces {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("checkerboard coloring conflict")]
    ColoringConflict,
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Input that is well formed but outside the supported class.
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_) | Error::ColoringConflict | Error::NotAdjacent(..))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

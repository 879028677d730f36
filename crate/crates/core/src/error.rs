use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index out of range: [{start}, {end}) on a word of length {len}")]
    Bounds { start: usize, end: usize, len: usize },

    #[error("letter {letter} is outside the alphabet of size {q}")]
    Letter { letter: u32, q: u32 },

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("did not converge: {0}")]
    Convergence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty pattern has no well-defined instances")]
    EmptyPattern,

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

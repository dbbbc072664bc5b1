use thiserror::Error;

/// Errors raised by the hypercube toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("dimension {0} outside supported range 1..=24")]
    UnsupportedDimension(u32),

    #[error("{what} = {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("path enumeration capacity exceeded: distance {distance} > {limit}")]
    PathCapacity { distance: u32, limit: u32 },

    #[error("{0} is not a neighbor of {1}")]
    NotNeighbor(String, String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no tabulated value for h = {0}")]
    Untabulated(u32),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("solver error: {0}")]
    Solver(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown problem `{id}`; valid ids: {}", valid.join(", "))]
    UnknownProblem { id: String, valid: Vec<String> },
    #[error("unknown algorithm `{id}`; valid ids: {}", valid.join(", "))]
    UnknownAlgorithm { id: String, valid: Vec<String> },
    #[error("unknown suite `{0}`; valid suites: classical19, five_classical30, cec2019")]
    UnknownSuite(String),
    #[error("unknown reference table `{id}`; valid tables: {}", valid.join(", "))]
    UnknownTable { id: String, valid: Vec<String> },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("empty sample for {0}")]
    EmptySample(String),
    #[error("run {run} (seed {seed:#018x}) of `{problem}` failed: {source}")]
    RunFailed {
        problem: String,
        run: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

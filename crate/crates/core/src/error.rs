use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the solve pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Structure(String),

    #[error("no records found in {0}")]
    EmptyInput(&'static str),

    #[error("every face of the mesh is degenerate")]
    EmptyMesh,

    #[error("singular kernel evaluation: {0}")]
    Singularity(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Contract { expected: usize, actual: usize },

    #[error("dense matrix refused: N = {n} exceeds the cap of {cap} elements")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("{0}")]
    Domain(String),

    #[error("series not converged at L = {terms}: tail estimate {tail:.3e} exceeds {target:.3e}")]
    SeriesNotConverged { terms: usize, tail: f64, target: f64 },

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// Attach a file path to an error raised while reading that file.
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File { path: path.into(), source: Box::new(self) }
    }

    /// The innermost error, with file context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::File { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building complexes, operators or oracles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {degree} out of range for a complex of dimension {dimension}")]
    Degree { degree: usize, dimension: usize },

    #[error("shape mismatch: expected {expected}, got {actual}")]
    Shape { expected: String, actual: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("{path}:{line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: unsupported face with {vertices} vertices (only triangles)")]
    UnsupportedFace {
        path: PathBuf,
        line: usize,
        vertices: usize,
    },

    #[error("complex is disconnected: vertex {to} is unreachable from vertex {from}")]
    Disconnected { from: usize, to: usize },

    #[error("gamma function pole at z = {0}")]
    Pole(f64),

    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },

    #[error("fractional order s = 1 must use the integer branch")]
    IntegerOrder,

    #[error("degenerate mesh: {0}")]
    DegenerateMesh(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate geometry: {0}")]
    Geometry(String),

    #[error("quadrature reached error estimate {achieved:e}, requested {requested:e}")]
    Accuracy { achieved: f64, requested: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_) | Error::Config(_) => 2,
            Error::Pole(_)
            | Error::Convergence { .. }
            | Error::Accuracy { .. }
            | Error::IntegerOrder => 4,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

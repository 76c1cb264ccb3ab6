use thiserror::Error;

/// Errors raised by code construction, sampling, spectral routines and experiments.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument or configuration (CLI exit code 2).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A brute-force or search budget would be exceeded (CLI exit code 3, as for I/O failures).
    #[error("resource error: {0}")]
    Resource(String),
    /// An input violated a documented precondition of the callee.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) => 2,
            Error::Resource(_) | Error::Io(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

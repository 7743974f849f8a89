use std::io;

use thiserror::Error;

/// Errors returned by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polar angle is undefined at the parameter origin (lambda = gamma = 0)")]
    OriginUndefined,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("point lies on the degeneracy sphere (|r - 1| = {distance:e})")]
    OnDegeneracySphere { distance: f64 },

    #[error("connection is singular on the negative-lambda axis (theta = {theta})")]
    DiracString { theta: f64 },

    #[error("segment {segment} carries phase {phase:.6}; refine the path")]
    InsufficientResolution { segment: usize, phase: f64 },

    #[error("path crosses the degeneracy sphere")]
    SphereCrossing,

    #[error("operation requires r > 1, got r = {r}")]
    InsideSphere { r: f64 },

    #[error("no grid node has a gap at or below {threshold:e}")]
    EmptyResult { threshold: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(context: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// The variants map one-to-one onto the CLI exit codes: input and parameter
/// problems are the caller's fault, capability errors mean an exhaustive mode
/// was asked to go beyond its size cap, and consistency errors signal a bug
/// (two independent computations disagreed).
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("construction failed after {attempts} attempts: {detail}")]
    ConstructionFailure { attempts: usize, detail: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Degenerate(_) | Error::Input(_) | Error::Parameter(_) | Error::Io { .. } => 2,
            Error::Capability(_) => 3,
            Error::Consistency(_) | Error::ConstructionFailure { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

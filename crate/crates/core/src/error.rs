use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rejection sampling for arm {arm} exceeded {attempts} attempts")]
    Sampling { arm: usize, attempts: u64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(
        "{subsets} subsets of size {m} from {n} samples exceed the capacity of {cap}; \
         supply a sampling budget to use the sampled estimator"
    )]
    Capacity { n: usize, m: usize, subsets: u128, cap: u128 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

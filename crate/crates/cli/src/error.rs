use std::io;

use thiserror::Error;

use crate::{EXIT_NUMERIC, EXIT_USAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("I/O: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

impl From<qdetect_core::Error> for CliError {
    fn from(e: qdetect_core::Error) -> Self {
        use qdetect_core::Error::*;
        match e {
            Domain { .. } | Truncation { .. } | DimensionMismatch(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use thiserror::Error;

use crate::pulse::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] tlphoton::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("output: {0}")]
    Output(String),

    /// Outputs were written but a convergence check failed.
    #[error("{0}")]
    NotConverged(String),
}

impl CliError {
    pub fn csv(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => ExitCode::from(2),
            CliError::Core(e) => match e {
                tlphoton::Error::NotConverged { .. } | tlphoton::Error::QuadratureFailure { .. } => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            },
            CliError::NotConverged(_) => ExitCode::from(3),
            CliError::Io { .. } | CliError::Output(_) => ExitCode::from(1),
        }
    }
}

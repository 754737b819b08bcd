use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Domain(String),

    #[error("methods disagree")]
    Disagreement,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    /// 0 success, 1 cross-check disagreement, 2 usage, 3 method domain.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Disagreement => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) | CliError::Output(_) => 4,
        })
    }
}

impl From<runprob::RunError> for CliError {
    fn from(e: runprob::RunError) -> Self {
        use runprob::RunError::*;
        match e {
            ProbabilityOutOfRange(_) | ZeroRunLength | InvalidConfig(_) => CliError::Usage(e.to_string()),
            CorollaryDomain { .. } | BruteForceCap { .. } => CliError::Domain(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

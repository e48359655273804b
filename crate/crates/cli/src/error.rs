use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("rank {rank} < omega = {omega} at k_max = {k_max}")]
    Deficient {
        rank: usize,
        omega: usize,
        k_max: usize,
    },
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation(_) | CliError::Io { .. } => 2,
            CliError::Deficient { .. } => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, e: &serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        CliError::Parse {
            path: path.into(),
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

impl From<epade_core::pipeline::PipelineError> for CliError {
    fn from(e: epade_core::pipeline::PipelineError) -> Self {
        use epade_core::dioph::DiophError;
        use epade_core::iterate::IterateError;
        use epade_core::pipeline::PipelineError as P;
        match e {
            P::Iterate(IterateError::IntegralityViolated { .. })
            | P::Dioph(DiophError::IntegralityViolated { .. }) => CliError::Internal(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

use std::path::PathBuf;
use wedgerate_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{line}: {reason}")]
    Config {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Numeric(#[from] CoreError),
    #[error("{failed} validation case(s) failed")]
    Validation { failed: usize },
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    ValidationFailure = 1,
    Usage = 2,
    Domain = 3,
    NotConverged = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            Self::Usage(_) | Self::Config { .. } | Self::Io { .. } => ExitStatus::Usage,
            Self::Validation { .. } => ExitStatus::ValidationFailure,
            Self::Numeric(e) => core_status(e),
        }
    }
}

pub(crate) fn core_status(e: &CoreError) -> ExitStatus {
    match e {
        CoreError::Domain { .. } | CoreError::Capability { .. } => ExitStatus::Domain,
        CoreError::NotConverged { .. } | CoreError::NonFinite { .. } => ExitStatus::NotConverged,
    }
}

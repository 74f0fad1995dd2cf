use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),

    #[error("audit failed: {0}")]
    AuditFailed(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Measure(#[from] qcorr_core::Error),
}

impl ExperimentError {
    /// Process exit code: 1 bad config, 2 audit failure, 3 I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 1,
            Self::AuditFailed(_) | Self::Measure(_) => 2,
            Self::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

pub(crate) fn config_err(msg: impl Into<String>) -> ExperimentError {
    ExperimentError::Config(msg.into())
}

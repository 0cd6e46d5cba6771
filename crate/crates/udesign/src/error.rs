// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use udesign_core::Error as CoreError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Pass = 0,
    /// Certification failed, search did not converge, or the error law was
    /// not reproduced.
    Fail = 1,
    /// Bad arguments, unreadable or malformed files.
    Usage = 2,
    /// A numerical resource guard tripped.
    Guard = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Self::Format {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            Self::Core(CoreError::ResourceLimit(_) | CoreError::NoConvergence { .. }) => ExitStatus::Guard,
            _ => ExitStatus::Usage,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

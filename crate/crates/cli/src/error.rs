use std::path::{Path, PathBuf};

use conical_core::Error as CoreError;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const CHECK: i32 = 3;
    pub const NUMERIC: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Document { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: CoreError,
    },

    #[error("cannot write {path}: {message}")]
    Output { path: PathBuf, message: String },

    /// A report was produced, but it records a failed check.
    #[error("{0}")]
    CheckFailed(String),

    /// A report was produced, but the limit did not settle.
    #[error("{0}")]
    NotConverged(String),
}

impl CliError {
    pub fn document(path: &Path, message: impl Into<String>) -> Self {
        CliError::Document {
            path: path.to_path_buf(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Document { .. } | CliError::Usage(_) => exit::INPUT,
            CliError::Output { .. } => exit::IO,
            CliError::CheckFailed(_) => exit::CHECK,
            CliError::NotConverged(_) => exit::NUMERIC,
            CliError::Core { source, .. } => core_exit_code(source),
        }
    }
}

pub fn core_exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::Discontinuous { .. }
        | CoreError::NotCommutative { .. }
        | CoreError::ConePoint(_)
        | CoreError::Invariant(_) => exit::CHECK,
        CoreError::Numeric(_) | CoreError::NotDerivable(_) => exit::NUMERIC,
        _ => exit::INPUT,
    }
}

/// Attaches `context` (usually the offending file) to core errors.
pub trait Context<T> {
    fn context(self, context: impl std::fmt::Display) -> Result<T, CliError>;
}

impl<T> Context<T> for Result<T, CoreError> {
    fn context(self, context: impl std::fmt::Display) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core {
            context: context.to_string(),
            source,
        })
    }
}

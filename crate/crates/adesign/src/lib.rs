//! File formats and the `adesign` command-line tool on top of `adesign-core`.
#![deny(missing_docs)]

pub mod cli;
pub mod formats;
pub mod table;

pub use adesign_core;

/// Failure of a CLI command, carrying its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input or arguments.
    #[error("{0}")]
    Usage(String),
    /// File system failure.
    #[error("{path}: {source}")]
    Io {
        /// Path involved.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
    /// A checked object failed verification.
    #[error("{0}")]
    Verification(String),
    /// Error from the algorithms.
    #[error(transparent)]
    Core(#[from] adesign_core::Error),
}

impl CliError {
    /// 1 for failed verification, 2 for bad parameters or input, 3 for an exhausted budget.
    pub fn exit_code(&self) -> i32 {
        use adesign_core::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Core(E::BudgetExhausted { .. }) => 3,
            CliError::Core(E::Internal(_) | E::RetriesExhausted { .. }) => 1,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Core(_) => 2,
        }
    }
}

//! Harness-level error taxonomy, mapped onto process exit codes.

use std::fmt;

/// Failures surfaced by the experiment harness.
#[derive(Debug)]
pub enum LabError {
    /// Malformed or out-of-schema configuration (exit code 2).
    Config(String),
    /// A numeric-kernel failure, including precision-budget violations,
    /// with the offending parameter named (exit code 2).
    Numeric { context: String, source: bsq_core::Error },
    /// Report IO failure (exit code 2).
    Io(std::io::Error),
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::Config(msg) => write!(f, "configuration error: {msg}"),
            LabError::Numeric { context, source } => {
                write!(f, "numeric failure in {context}: {source}")
            }
            LabError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for LabError {}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e)
    }
}

impl LabError {
    /// The process exit code this failure maps to. Check failures are not
    /// errors (they exit 1 through the report's pass/fail summary); every
    /// `LabError` is a configuration/budget/IO problem and exits 2.
    pub fn exit_code(&self) -> u8 {
        2
    }

    /// Attach a parameter context to a kernel error.
    pub fn numeric(context: impl Into<String>) -> impl FnOnce(bsq_core::Error) -> LabError {
        let context = context.into();
        move |source| LabError::Numeric { context, source }
    }
}

pub type LabResult<T> = Result<T, LabError>;

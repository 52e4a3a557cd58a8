//! Library side of the `tetreq` binary: subcommand implementations, file
//! formats, and report rendering. The binary in `main.rs` only parses
//! arguments and maps outcomes to exit codes.

pub mod commands;
pub mod formats;
pub mod report;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(format!("io: {e}"))
    }
}

impl From<tetreq_core::word::WordError> for CliError {
    fn from(e: tetreq_core::word::WordError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<tetreq_core::bruhat::BruhatError> for CliError {
    fn from(e: tetreq_core::bruhat::BruhatError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<tetreq_core::tensor::TensorError> for CliError {
    fn from(e: tetreq_core::tensor::TensorError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<tetreq_core::verify::VerifyError> for CliError {
    fn from(e: tetreq_core::verify::VerifyError) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// Check selector for `tetreq verify --which`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum WhichCheck {
    Eight,
    Classic,
    Ybe,
    Obstruction,
    Unitarity,
    Collapse,
    Lawrence,
}

use std::io;
use std::path::PathBuf;

use arcspoke_core::{DiagramError, PipelineError};

/// Every failure the CLI reports, with its frozen exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("{0}")]
    Nonplanar(DiagramError),
    #[error("spoking failed: {0}")]
    Spoking(String),
    #[error("assembly failed: {0}")]
    Assembly(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    /// Failure while handling one of several input files.
    #[error("{}: {source}", path.display())]
    InFile { path: PathBuf, source: Box<CliError> },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Structure(_) => 2,
            CliError::Nonplanar(_) => 3,
            CliError::Spoking(_) => 4,
            CliError::Assembly(_) => 5,
            CliError::Check(_) => 6,
            CliError::Usage(_) | CliError::Io { .. } => 7,
            CliError::InFile { source, .. } => source.exit_code(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Nonplanar { .. } => CliError::Nonplanar(e),
            other => CliError::Structure(other.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Diagram(d) => d.into(),
            PipelineError::Pivot(_) | PipelineError::Spoking { .. } => CliError::Spoking(e.to_string()),
            PipelineError::Assembly(_) | PipelineError::Invalid(_) => CliError::Assembly(e.to_string()),
            PipelineError::Conservation { .. }
            | PipelineError::ComponentPages { .. }
            | PipelineError::Fidelity
            | PipelineError::Bound { .. } => CliError::Check(e.to_string()),
        }
    }
}

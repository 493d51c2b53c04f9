use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the propagation engines and the file readers/writers.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario or configuration value failed validation.
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },

    /// Terrain relief does not fit in the PE column.
    #[error("terrain relief {relief:.2} m at range {range:.1} m exceeds the PE domain height {z_max:.2} m")]
    DomainOverflow { range: f64, relief: f64, z_max: f64 },

    /// A query falls outside the computed grid or window.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A text file could not be parsed.
    #[error("line {line}: {field}: {reason}")]
    Parse {
        line: usize,
        field: String,
        reason: String,
    },

    /// A feature named by the input format that this engine does not model.
    #[error("line {line}: {what} unsupported")]
    Unsupported { line: usize, what: String },

    /// The value cannot be written in the requested format.
    #[error("format error: {0}")]
    Format(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(line: usize, field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by user input (files, flags, scenario values)
    /// rather than by the computation itself.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Invalid { .. }
                | Error::Parse { .. }
                | Error::Unsupported { .. }
                | Error::DomainOverflow { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

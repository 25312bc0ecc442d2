// SPDX-License-Identifier: Apache-2.0

//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("singular point in {level}: {detail}")]
    SingularPoint { level: String, detail: String },

    #[error("matrix is not Hermitian (max |H - H^dagger| = {max_asymmetry:e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("integration diverged at step {step}")]
    Divergence { step: usize },

    #[error("positivity violated: {quantity} = {value:e}")]
    PositivityViolation { quantity: &'static str, value: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularPoint { .. }
                | Error::Eigensolver(_)
                | Error::Divergence { .. }
                | Error::PositivityViolation { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

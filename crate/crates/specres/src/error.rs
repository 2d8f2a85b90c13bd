use std::path::PathBuf;

use specres_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}:{line}: {message}")]
    Config { path: PathBuf, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type AppResult<T> = Result<T, AppError>;

/// Exit code on success.
pub const EXIT_PASS: i32 = 0;
/// A case ran but missed its tolerance.
pub const EXIT_TOLERANCE: i32 = 1;
/// Bad flags, bad config, bad parameters.
pub const EXIT_USAGE: i32 = 2;
/// The numerics refused the input (quadrature tail, edge data, non-finite values).
pub const EXIT_NUMERICAL: i32 = 3;

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(e) => core_exit_code(e),
            AppError::Io { .. } | AppError::Json(_) | AppError::Csv(_) => EXIT_NUMERICAL,
            AppError::Usage(_) | AppError::Config { .. } => EXIT_USAGE,
        }
    }
}

/// Errors raised while processing corpus data count as numerical
/// rejections even when the root cause is a parameter check.
pub fn core_exit_code(e: &CoreError) -> i32 {
    if matches!(e, CoreError::Member { .. }) {
        return EXIT_NUMERICAL;
    }
    match e {
        CoreError::QuadratureTail { .. } | CoreError::EdgeViolation { .. } | CoreError::NonFinite { .. } | CoreError::Pole { .. } => {
            EXIT_NUMERICAL
        }
        _ => EXIT_USAGE,
    }
}

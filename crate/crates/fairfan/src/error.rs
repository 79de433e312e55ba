use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fairfan_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed rational {0:?}; expected p or p/q")]
    Rational(String),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

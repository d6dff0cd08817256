use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),

    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("dataset `{name}`: {source}")]
    Dataset {
        name: String,
        #[source]
        source: sectorts::Error,
    },

    #[error(transparent)]
    Analysis(#[from] sectorts::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

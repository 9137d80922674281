use std::io;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] stancecraft_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("input not found: {0}")]
    MissingInput(PathBuf),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: schema error: {msg}")]
    Schema { path: PathBuf, msg: String },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        let path = path.as_ref().to_path_buf();
        if source.kind() == io::ErrorKind::NotFound {
            return Error::MissingInput(path);
        }
        Error::Io { path, source }
    }

    pub fn schema(path: impl AsRef<Path>, msg: impl Into<String>) -> Self {
        Error::Schema {
            path: path.as_ref().to_path_buf(),
            msg: msg.into(),
        }
    }

    /// 2 for usage and configuration problems, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MissingInput(_) | Error::Config(_) => 2,
            Error::Core(stancecraft_core::Error::Config(_)) => 2,
            _ => 1,
        }
    }
}

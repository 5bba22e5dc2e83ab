use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate projection: reference latitude {0} is at a pole")]
    DegenerateProjection(f64),

    #[error("schema error: missing column or property `{0}`")]
    Schema(String),

    #[error("line {line}: {message}")]
    Row { line: u64, message: String },

    #[error("duplicate case id `{0}`")]
    DuplicateId(String),

    #[error("unsupported geometry type `{0}` (only Point is supported)")]
    UnsupportedGeometry(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

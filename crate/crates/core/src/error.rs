use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Mathematically undefined request (inverting zero, unsupported radicand).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown name '{0}'")]
    Lookup(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Closure hit the element cap: the group is too large or infinite.
    #[error("group too large or infinite: more than {cap} elements")]
    CapExceeded { cap: usize },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Failures caused by size limits or the environment rather than by input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::Resource(_) | Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

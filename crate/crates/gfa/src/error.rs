use thiserror::Error;

/// Crate-wide error type. The CLI maps each variant onto the documented
/// exit code (parse/schema → 2, domain → 3, size cap → 5).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn size_cap(msg: impl Into<String>) -> Self {
        Error::SizeCap(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

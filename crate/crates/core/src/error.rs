use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a Weil polynomial: {0}")]
    NotWeil(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("{0} is out of the configured bound")]
    OutOfBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

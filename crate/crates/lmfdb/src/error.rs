use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum LmfdbError {
    #[error("no offline data for q = {q}{}", p_rank.map(|r| format!(", p_rank = {r}")).unwrap_or_default())]
    OfflineDataMissing { q: u64, p_rank: Option<u32> },
    #[error("malformed response ({message}); document kept at {}", document.display())]
    Parse { message: String, document: PathBuf },
    #[error("HTTP {status} from {url}")]
    Http { status: u16, url: String },
    #[error("network: {0}")]
    Network(String),
    #[error("cache: {0}")]
    Io(String),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("q mismatch: expected {expected}, found {found}")]
    QMismatch { expected: u64, found: u64 },
}

impl From<std::io::Error> for LmfdbError {
    fn from(e: std::io::Error) -> Self {
        LmfdbError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LmfdbError>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("truncation windows differ")]
    WindowMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("z must be nonzero")]
    ZeroPoint,
    #[error("log power {found} exceeds the window maximum {max}")]
    LogPowerOverflow { found: u32, max: u32 },
    #[error("residue undefined: {0}")]
    Residue(String),
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("coefficient family depends on z: {0}")]
    NotGenuine(String),
    #[error("operator is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("fusion table invalid: {0}")]
    Fusion(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

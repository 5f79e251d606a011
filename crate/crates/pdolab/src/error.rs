//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field side mismatch: expected {expected}, got {got}")]
    SideMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("test function rejected: {0}")]
    TestFunction(String),

    #[error(
        "dilation would alias: band index {band} scaled by {scale} exceeds Nyquist index {nyquist}"
    )]
    Aliasing { band: f64, scale: f64, nyquist: f64 },

    #[error("invalid symbol parameter: {0}")]
    InvalidSymbol(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("shell index {j} outside active range -1..={max}")]
    ShellOutOfRange { j: i32, max: i32 },

    #[error("empty cube family")]
    EmptyFamily,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("battery contains a zero field (member {0})")]
    ZeroField(usize),

    #[error(
        "insufficient certified smoothness: need xi-order {needed}, certificate covers {have}"
    )]
    InsufficientCertification { needed: usize, have: usize },

    #[error("weight failed its A_p stability pre-check: {0}")]
    WeightPrecheck(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    pub fn config(line: usize, message: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: message.into(),
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("word parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid homotopy word: {0}")]
    InvalidWord(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("oracle did not stabilize after {escalations} escalations (last window [{lo}, {hi}]): {detail}")]
    UnstableWindow {
        escalations: usize,
        lo: i64,
        hi: i64,
        detail: String,
    },

    #[error("unknown arithmetic backend `{0}`")]
    UnknownBackend(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("group is not transitive")]
    Intransitive,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("source tuple does not generate the group")]
    NotGenerating,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("spec violations: {}", .0.join("; "))]
    SpecViolation(Vec<String>),
    #[error("unrealizable: {0}")]
    Unrealizable(String),
    #[error("bad character table: {0}")]
    BadCharacterTable(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

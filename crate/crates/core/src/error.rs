use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("resource cap `{cap}` exceeded: limit {limit}, needed {needed}")]
    Resource {
        cap: &'static str,
        limit: usize,
        needed: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("product undefined: word is not in the domain")]
    UndefinedProduct,
    /// A computed fact contradicts a proven statement; never expected.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported Cartan type {0}: only simply-laced A, D, E are implemented")]
    UnsupportedType(String),
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("central charge mismatch: {0} vs {1}")]
    ChargeMismatch(String, String),
    #[error("inducing module is not annihilated by the nilradical: {0}")]
    NotAnnihilated(String),
    #[error("weight hypotheses violated: {0}")]
    WeightHypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

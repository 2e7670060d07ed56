use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("not in K: {0} has a pole at q = 1")]
    NotInK(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("orientation failure: cannot orient consequence {0}")]
    OrientationFailure(String),

    #[error("relation violated by matrix: {relation} evaluates to {value}")]
    RelationViolation { relation: String, value: String },

    #[error("invalid xi: {0}")]
    InvalidXi(String),
}

pub type Result<T> = std::result::Result<T, Error>;

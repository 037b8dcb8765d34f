use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial: {0}")]
    ZeroPolynomial(&'static str),
    #[error("no solution: {0}")]
    NotSolvable(String),
    #[error("factors are not coprime: {0}")]
    NotCoprime(String),
    #[error("denominator is not square-free")]
    NotSquareFree,
    #[error("not elementary: {0}")]
    NotElementary(String),
    #[error("residues do not split over Q or Q(i): {0}")]
    UnsupportedSplitting(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at token {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

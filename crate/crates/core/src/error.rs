use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("jacobi symbol needs an odd positive modulus, got {0}")]
    EvenModulus(String),
    #[error("zero has no finite divisor list")]
    ZeroDivisors,
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("elements or ideals belong to different fields (c = {0} vs c = {1})")]
    FieldMismatch(String, String),
    #[error("{c1} does not divide c = {c}")]
    NotRamified { c1: String, c: String },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("lehmer sequence index must be positive")]
    ZeroIndex,
    #[error("q = {q} divides 2c = {two_c}")]
    BadAuxiliaryPrime { q: String, two_c: String },
    #[error("invalid instance (C1 = {c1}, C2 = {c2}): {reason}")]
    InvalidInstance {
        c1: String,
        c2: String,
        reason: String,
    },
    #[error("routing violation: {0}")]
    Routing(String),
    #[error("{s} does not divide d' = {d_prime}")]
    NotADivisor { s: String, d_prime: String },
    #[error("golden table: {0}")]
    Golden(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not representable in factored form: {0}")]
    NotRepresentable(String),
    #[error("a denominator factor vanishes under substitution")]
    VanishingFactor,
    #[error("factor {0} cannot be expanded in the requested domain")]
    NotExpandable(String),
    #[error("pole of {0} is not linear in the integration variable")]
    NonLinearPole(String),
    #[error("k = {k} is out of range for an alphabet of size {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("result is not symmetric in alphabet {0}")]
    SymmetryViolation(String),
    #[error("no directed partition found")]
    NoDirectedPartition,
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("degree bound exhausted without stabilization (last bound {0})")]
    DegreeBoundExhausted(usize),
    #[error("degree cap {0} exceeded")]
    DegreeCapExceeded(usize),
    #[error("class is zero")]
    ZeroClass,
    #[error("polynomial is not symmetric in the given alphabet")]
    Asymmetric,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

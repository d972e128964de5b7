use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} simple real roots, isolated {found}")]
    RootCountMismatch { expected: usize, found: usize },

    #[error("q = {q} is not a root of the critical polynomial (relative residual {residual:e})")]
    NotARoot { q: f64, residual: f64 },

    #[error("parameters violate the constraint {0}")]
    ConstraintViolated(String),

    #[error("parameters do not satisfy alpha = -n epsilon for n = {n}")]
    NotQes { n: usize },

    #[error("weight is singular at z = {z}")]
    SingularPoint { z: f64 },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("linear system is singular: {0}")]
    SingularSystem(String),

    #[error("invalid branch: {0}")]
    InvalidCase(String),

    #[error("resultant vanishes identically; the two polynomials share a component")]
    EliminationDegenerate,

    #[error("no spectral root reproduces lambda = {lambda}")]
    NoMatchingRoot { lambda: f64 },

    #[error("{count} spectral roots reproduce lambda = {lambda}")]
    AmbiguousRoot { lambda: f64, count: usize },

    #[error("point outside the coordinate domain: {0}")]
    Domain(String),

    #[error("wavefunction is not normalizable: {0}")]
    NotNormalizable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("torus length must be positive, got {0}")]
    InvalidTorusLength(i64),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("determinant is zero")]
    ZeroDeterminant,
    #[error("determinant {0} is not a unit times an integer")]
    NonUnitMonomialFactor(String),
    #[error("elements belong to different modules")]
    OwnerMismatch,
    #[error("{what} of size {size} exceeds the cap {cap}")]
    ResourceLimit { what: &'static str, size: u128, cap: u128 },
    #[error("counted {counted} elements, expected {expected}")]
    CountMismatch { counted: String, expected: String },
    #[error("{0} does not annihilate the group")]
    NotAnnihilating(String),
    #[error("form is not well defined on the cokernel: {0}")]
    IllDefined(String),
    #[error("form is not hermitian: {0}")]
    NotHermitian(String),
    #[error("form is not even: {0}")]
    NotEven(String),
    #[error("quadratic form is degenerate")]
    DegenerateForm,
    #[error("quadratic form is inconsistent: {0}")]
    InvalidQuadraticForm(String),
    #[error("submodule is not isotropic")]
    NotIsotropic,
    #[error("submodule is not a lagrangian: {0}")]
    NotLagrangian(String),
    #[error("submodule is not a sublagrangian: {0}")]
    NotSublagrangian(String),
    #[error("side condition failed: {0}")]
    SideConditionFailed(String),
    #[error("index {0} is not a perfect square")]
    NotPerfectSquare(String),
    #[error("inconsistent certificate: {0}")]
    InconsistentCertificate(String),
    #[error("middle lagrangians differ")]
    MiddleLagrangianMismatch,
    #[error("terms do not commute: {0}")]
    NonCommutingTerms(String),
    #[error("numerical check failed: {0}")]
    Numerical(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quadrature too coarse: M = {m} needs to be at least {required}")]
    UnderResolved { m: usize, required: usize },
    #[error("invalid grid size {0}: expected an even number >= 4")]
    BadGrid(usize),
    #[error("basis mismatch: expected {expected}, got {got}")]
    BasisMismatch { expected: &'static str, got: &'static str },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("curve is not injective: points {i} and {j} are {dist:e} apart")]
    NotInjective { i: usize, j: usize, dist: f64 },
    #[error("invalid curve parameters: {0}")]
    BadCurve(String),
    #[error("kernel evaluation failed at argument {0}")]
    Kernel(f64),
    #[error("matrix is not symmetric in the weighted inner product (defect {0:e})")]
    NotSymmetric(f64),
    #[error("matrix has a non-negligible imaginary part ({0:e})")]
    NotReal(f64),
    #[error("eigenvalue {0:e} is too close to zero for an inverse square root")]
    SingularEigenvalue(f64),
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error("fit needs at least two positive samples, got {0}")]
    Fit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

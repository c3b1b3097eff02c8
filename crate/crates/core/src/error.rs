use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("matrix is not symmetric: defect {defect:.3e} exceeds {tolerance:.3e}")]
    NotSymmetric { defect: f64, tolerance: f64 },
    #[error("function undefined at eigenvalue {eigenvalue:.6e}")]
    Domain { eigenvalue: f64 },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("operator is not positive definite")]
    NotPositiveDefinite,
    #[error("quadrature did not converge after {refinements} refinements (last change {residual:.3e})")]
    QuadratureNotConverged { refinements: usize, residual: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

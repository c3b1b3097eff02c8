use kgscat_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("time quadrature did not converge on [{a:.4}, {b:.4}] (panel residual {residual:.3e})")]
    QuadratureNotConverged { a: f64, b: f64, residual: f64 },
    #[error("invalid source: {0}")]
    InvalidSource(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

use kgscat_core::CoreError;
use kgscat_dynamics::DynamicsError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatteringError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(
        "wave operator w{direction} not converged for the packet at k0 = {k0}: Cook residual {residual:.3e} > {threshold:.1e}; increase L or T_max"
    )]
    NotConverged { direction: char, k0: f64, residual: f64, threshold: f64 },
    #[error("invalid exponent triple ({0}, {1}, {2}): need a + b + c = 0 with entries in {{±1, ±1/2, 0}}")]
    InvalidExponents(f64, f64, f64),
    #[error("{what}: residual {residual:.3e} exceeds {threshold:.1e}")]
    Inconsistent { what: String, residual: f64, threshold: f64 },
    #[error("source tail {tail:.3e} is not below {threshold:.1e} at the quadrature cutoff")]
    SourceTail { tail: f64, threshold: f64 },
}

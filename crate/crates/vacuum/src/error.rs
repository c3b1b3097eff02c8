use kgscat_scattering::ScatteringError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VacuumError {
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error("the scattering context carries no source asymptotics")]
    NoSource,
    #[error("{identity}: paths differ by {residual:.3e} (relative), above {threshold:.1e}")]
    Mismatch { identity: String, residual: f64, threshold: f64 },
    #[error("z_lambda is not Cauchy: difference {current:.3e} at step {step} does not improve on {previous:.3e}")]
    NotCauchy { step: usize, previous: f64, current: f64 },
    #[error("invalid cutoff scales: {0}")]
    InvalidLambda(String),
}

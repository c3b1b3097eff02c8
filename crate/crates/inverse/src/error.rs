use kgscat_dynamics::DynamicsError;
use kgscat_scattering::ScatteringError;
use kgscat_vacuum::VacuumError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InverseError {
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Vacuum(#[from] VacuumError),
    #[error("j spectrally degenerate on band: {masked} of {total} band points masked")]
    SpectrallyDegenerate { masked: usize, total: usize },
    #[error("no z sample at k = {k}")]
    MissingSample { k: f64 },
    #[error("|F rho| is below {threshold:.1e} at every band momentum; no admissible k0")]
    NoAnchor { threshold: f64 },
    #[error("Taylor remainder {ratio:.3e} > {tolerance:.1e} at center {center}: step delta/2 = {step} is too large for the radius of convergence")]
    Divergent { center: f64, step: f64, ratio: f64, tolerance: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

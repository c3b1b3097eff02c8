use kgscat_core::{hs_norm, Real};
use kgscat_dynamics::BlockOperator;

use crate::FockError;

/// `U₋₊` Hilbert–Schmidt norm for a symplectic block operator.
#[derive(Clone, Debug, PartialEq)]
pub struct ShaleReport {
    pub hs_norm: f64,
    pub symplectic_defect: f64,
    /// Finite off-diagonal block: `U` is implementable on Fock space.
    pub pass: bool,
}

pub fn shale_check<T: Real>(u: &BlockOperator<T>, tolerance: f64) -> Result<ShaleReport, FockError> {
    let defect = u.symplectic_defect().to_f64().unwrap_or(f64::NAN);
    if !(defect <= tolerance) {
        return Err(FockError::NotSymplectic { defect, tolerance });
    }
    let hs = hs_norm(&u.mp).to_f64().unwrap_or(f64::NAN);
    Ok(ShaleReport { hs_norm: hs, symplectic_defect: defect, pass: hs.is_finite() })
}

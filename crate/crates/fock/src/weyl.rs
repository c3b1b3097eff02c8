use std::sync::Arc;

use kgscat_core::{lit, Real};
use nalgebra::DMatrix;
use num_complex::Complex;

use crate::{exp_i, operator_matrix, FockError, FockSpace, FockState};

/// Truncated matrix of `ψ(v)`.
pub fn psi_matrix<T: Real>(space: &Arc<FockSpace>, plus: &[Complex<T>], minus: &[Complex<T>]) -> DMatrix<Complex<T>> {
    operator_matrix(space, |s| s.psi(plus, minus))
}

/// `e^{c*(α) − c(α)}Ω = e^{−‖α‖²/2} Σₖ c*(α)ᵏΩ/k!`, summed up to the cutoff.
/// The returned `dropped` is the norm missing from the truncation, from the Poisson tail.
pub fn coherent_state<T: Real>(space: &Arc<FockSpace>, alpha: &[Complex<T>]) -> Result<FockState<T>, FockError> {
    if alpha.len() != space.modes() {
        return Err(FockError::Dimension { expected: space.modes(), got: alpha.len() });
    }
    let norm2: T = alpha.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
    let mut term = FockState::vacuum(space);
    let mut sum = term.clone();
    for k in 1..=space.n_max() {
        term = term.create(alpha).scale(Complex::new(T::one() / lit::<T>(k as f64), T::zero()));
        sum = sum.add(&term);
    }
    let mut out = sum.scale(Complex::new((-norm2 / lit::<T>(2.0)).exp(), T::zero()));
    let x = norm2.to_f64().unwrap_or(f64::NAN);
    let mut term = (-x).exp();
    let mut tail = 0.0;
    for k in 1..=space.n_max() + 60 {
        term *= x / k as f64;
        if k > space.n_max() {
            tail += term;
        }
    }
    out.dropped = lit(tail.sqrt());
    Ok(out)
}

/// Residual of `e^{iψ(v)}c(f)e^{−iψ(v)}Ω = c(f)Ω − i(f, v₊)Ω` for `v = [v₊; v̄₊] ∈ ℋ_C`.
#[derive(Clone, Debug, PartialEq)]
pub struct DisplacementReport {
    pub n_max: usize,
    pub residual: f64,
    /// `|‖e^{−iψ(v)}Ω‖ − 1|`.
    pub vacuum_norm_defect: f64,
}

pub fn displacement_check<T: Real>(
    n_max: usize,
    v_plus: &[Complex<T>],
    f: &[Complex<T>],
) -> Result<DisplacementReport, FockError> {
    let d = v_plus.len();
    if f.len() != d {
        return Err(FockError::Dimension { expected: d, got: f.len() });
    }
    let space = FockSpace::new(d, n_max)?;
    let minus: Vec<_> = v_plus.iter().map(|z| z.conj()).collect();
    let psi = psi_matrix(&space, v_plus, &minus);
    let fwd = exp_i(&psi, -T::one());
    let back = exp_i(&psi, T::one());
    let cf = operator_matrix(&space, |s| s.annihilate(f));
    let omega = FockState::<T>::vacuum(&space);
    let displaced = &fwd * &omega.amps;
    let lhs = &back * (&cf * &displaced);
    let fv: Complex<T> = f.iter().zip(v_plus).map(|(a, b)| a.conj() * b).fold(Complex::new(T::zero(), T::zero()), |s, z| s + z);
    // c(f)Ω = 0, so the right-hand side is −i(f, v₊)Ω
    let rhs = &omega.amps * (Complex::new(T::zero(), -T::one()) * fv);
    Ok(DisplacementReport {
        n_max,
        residual: (lhs - rhs).norm().to_f64().unwrap_or(f64::NAN),
        vacuum_norm_defect: (displaced.norm() - T::one()).abs().to_f64().unwrap_or(f64::NAN),
    })
}

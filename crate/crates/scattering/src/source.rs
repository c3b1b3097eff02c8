use kgscat_core::linalg::real_mul_vec;
use kgscat_core::{CMat, CVec, FieldOperators64, LatticeFunction64, SymOperator64};
use kgscat_dynamics::{SourceSpec64, TemporalProfile64, VectorQuadrature64};
use nalgebra::DVector;
use num_complex::Complex;

use crate::{Direction, ScatteringError};

/// Relative level below which the profile is treated as zero when truncating time integrals.
pub const PROFILE_CUTOFF: f64 = 1e-30;
/// Required bound on the `e^{δ|t|}`-weighted tail beyond the truncation.
pub const TAIL_TOLERANCE: f64 = 1e-10;

fn check_tail(profile: &TemporalProfile64, delta: Option<f64>, r: f64) -> Result<(), ScatteringError> {
    let tail = profile.tail_bound(r, delta.unwrap_or(0.0));
    if tail > TAIL_TOLERANCE {
        return Err(ScatteringError::SourceTail { tail, threshold: TAIL_TOLERANCE });
    }
    Ok(())
}

/// `∫_0^{±∞} e^{isε} j(s) ds` at every eigenvalue `ε` of `op`.
pub fn half_line_transform(
    op: &SymOperator64,
    source: &SourceSpec64,
    direction: Direction,
    quad: &VectorQuadrature64,
) -> Result<CVec<f64>, ScatteringError> {
    let p = source.profile();
    let (lo, hi) = p.support(PROFILE_CUTOFF);
    let end = if direction == Direction::Plus { hi.max(0.0) } else { lo.min(0.0) };
    check_tail(p, source.delta(), end.abs())?;
    time_transform(op, p, 0.0, end, quad)
}

/// `∫_{-∞}^{∞} e^{isε} j(s) ds` at every eigenvalue `ε` of `op`.
pub fn full_line_transform(
    op: &SymOperator64,
    source: &SourceSpec64,
    quad: &VectorQuadrature64,
) -> Result<CVec<f64>, ScatteringError> {
    let p = source.profile();
    let (lo, hi) = p.support(PROFILE_CUTOFF);
    check_tail(p, source.delta(), lo.abs().min(hi.abs()))?;
    time_transform(op, p, lo, hi, quad)
}

fn time_transform(
    op: &SymOperator64,
    p: &TemporalProfile64,
    a: f64,
    b: f64,
    quad: &VectorQuadrature64,
) -> Result<CVec<f64>, ScatteringError> {
    let e = &op.spectrum().values;
    let f = |s: f64| {
        let js = p.eval(s);
        DVector::from_iterator(e.len(), e.iter().map(|&ek| Complex::new((s * ek).cos() * js, (s * ek).sin() * js)))
    };
    Ok(quad.integrate(f, a, b, &p.breakpoints())?.value)
}

/// `Q diag(ε^{-1/2}·H(ε)) Qᵀ v` in the eigenbasis of `op`.
fn spectral_apply(op: &SymOperator64, weights: &CVec<f64>, v: &CVec<f64>) -> CVec<f64> {
    let s = op.spectrum();
    let c = real_mul_vec(&s.vectors.transpose(), v);
    let scaled = CVec::from_iterator(
        c.len(),
        c.iter().zip(weights.iter()).zip(s.values.iter()).map(|((c, w), &e)| c * w / e.sqrt()),
    );
    real_mul_vec(&s.vectors, &scaled)
}

/// `g± = −(1/√2)∫_0^{±∞} ω₀^{-1/2}e^{isω₀}w±*J_s ds`.
pub fn g_pm(
    ops: &FieldOperators64,
    w: &CMat<f64>,
    source: &SourceSpec64,
    direction: Direction,
    quad: &VectorQuadrature64,
) -> Result<LatticeFunction64, ScatteringError> {
    let h = half_line_transform(ops.omega0(), source, direction, quad)?;
    let rho = w.adjoint() * source.rho().values();
    let g = spectral_apply(ops.omega0(), &h, &rho) * Complex::from(-std::f64::consts::FRAC_1_SQRT_2);
    Ok(source.rho().with_values(g))
}

/// `g_∞` by both routes: `w₊g₊ − w₋g₋` and `−(1/√2)∫ω^{-1/2}e^{isω}J_s ds`.
#[derive(Clone, Debug)]
pub struct GInfinity {
    pub from_wave_operators: LatticeFunction64,
    pub direct: LatticeFunction64,
    /// `‖difference‖ / ‖direct‖` (zero when both vanish).
    pub relative_difference: f64,
}

impl GInfinity {
    pub fn check(&self, threshold: f64) -> Result<(), ScatteringError> {
        if self.relative_difference > threshold {
            return Err(ScatteringError::Inconsistent {
                what: "g_infinity two-formula agreement".into(),
                residual: self.relative_difference,
                threshold,
            });
        }
        Ok(())
    }
}

pub fn g_infinity_direct(
    ops: &FieldOperators64,
    source: &SourceSpec64,
    quad: &VectorQuadrature64,
) -> Result<LatticeFunction64, ScatteringError> {
    let h = full_line_transform(ops.omega(), source, quad)?;
    let g = spectral_apply(ops.omega(), &h, source.rho().values()) * Complex::from(-std::f64::consts::FRAC_1_SQRT_2);
    Ok(source.rho().with_values(g))
}

pub fn g_infinity(
    ops: &FieldOperators64,
    w_plus: &CMat<f64>,
    w_minus: &CMat<f64>,
    g_plus: &LatticeFunction64,
    g_minus: &LatticeFunction64,
    source: &SourceSpec64,
    quad: &VectorQuadrature64,
) -> Result<GInfinity, ScatteringError> {
    let via = w_plus * g_plus.values() - w_minus * g_minus.values();
    let from_wave_operators = g_plus.with_values(via);
    let direct = g_infinity_direct(ops, source, quad)?;
    let d = ops.grid().norm(&(from_wave_operators.values() - direct.values()));
    let scale = direct.norm();
    let relative_difference = if scale > 0.0 { d / scale } else { d };
    Ok(GInfinity { from_wave_operators, direct, relative_difference })
}

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use kgscat_core::linalg::{real_mul_vec, spectral_matrix};
use kgscat_core::{lit, FieldOperators, LatticeFunction, Real, SymOperator};

use crate::{DynamicsError, SourceSpec, TemporalProfile, VectorQuadrature};

/// `e^{-itA}` through the eigenbasis of `A`.
pub fn propagator<T: Real>(a: &SymOperator<T>, t: T) -> DMatrix<Complex<T>> {
    let s = a.spectrum();
    let phases: Vec<Complex<T>> = s.values.iter().map(|&e| Complex::new((t * e).cos(), -(t * e).sin())).collect();
    spectral_matrix(&s.vectors, &phases)
}

/// Per-eigenvalue Duhamel kernels `∫_0^t e^{i(t−s)e_k} j(s) ds` for the eigenvalues `e_k` of `ω`.
/// Real part is the cosine integral, imaginary part the sine integral.
#[derive(Clone, Debug)]
pub struct Duhamel<T: Real> {
    pub kernel: DVector<Complex<T>>,
    pub residual: f64,
}

pub fn duhamel_integrals<T: Real>(
    omega: &SymOperator<T>,
    profile: &TemporalProfile<T>,
    t: T,
    quad: &VectorQuadrature<T>,
) -> Result<Duhamel<T>, DynamicsError> {
    let e = &omega.spectrum().values;
    let (lo, hi) = profile.support(1e-18);
    // j vanishes (to the cutoff) outside [lo, hi]
    let (a, b) = if t >= T::zero() { (T::zero(), t.min(hi.max(T::zero()))) } else { (T::zero(), t.max(lo.min(T::zero()))) };
    let f = |s: T| {
        let js = profile.eval(s);
        DVector::from_iterator(e.len(), e.iter().map(|&ek| {
            let ph = (t - s) * ek;
            Complex::new(ph.cos() * js, ph.sin() * js)
        }))
    };
    let r = quad.integrate(f, a, b, &profile.breakpoints())?;
    Ok(Duhamel { kernel: r.value, residual: r.residual })
}

/// Classical field and momentum at time `t`.
#[derive(Clone, Debug)]
pub struct FlowState<T: Real> {
    pub phi: LatticeFunction<T>,
    pub pi: LatticeFunction<T>,
}

impl<T: Real> FlowState<T> {
    /// `½(‖π‖² + ‖ωφ‖²)`.
    pub fn energy(&self, ops: &FieldOperators<T>) -> T {
        let wphi = ops.omega().apply(self.phi.values());
        let wphi = self.phi.with_values(wphi);
        let p = self.pi.norm();
        let q = wphi.norm();
        (p * p + q * q) * lit(0.5)
    }
}

/// Solution of `φ̈ + ω²φ = J_t` with data `(φ₀, π₀)` at `t = 0`:
///
/// `φ_t = cos(tω)φ₀ + ω⁻¹sin(tω)π₀ + ∫_0^t sin[(t−s)ω]ω⁻¹J_s ds`,
/// `π_t = −ω sin(tω)φ₀ + cos(tω)π₀ + ∫_0^t cos[(t−s)ω]J_s ds`.
pub fn classical_flow<T: Real>(
    ops: &FieldOperators<T>,
    phi0: &LatticeFunction<T>,
    pi0: &LatticeFunction<T>,
    source: Option<&SourceSpec<T>>,
    t: T,
    quad: &VectorQuadrature<T>,
) -> Result<FlowState<T>, DynamicsError> {
    let n = ops.grid().n();
    for v in [phi0, pi0] {
        if v.len() != n {
            return Err(DynamicsError::Dimension { expected: n, got: v.len() });
        }
    }
    let spec = ops.omega().spectrum();
    let q = &spec.vectors;
    let qt = q.transpose();
    let cphi = real_mul_vec(&qt, phi0.values());
    let cpi = real_mul_vec(&qt, pi0.values());
    let mut phi_c = DVector::zeros(n);
    let mut pi_c = DVector::zeros(n);
    for k in 0..n {
        let e = spec.values[k];
        let (c, s) = ((t * e).cos(), (t * e).sin());
        phi_c[k] = cphi[k] * c + cpi[k] * (s / e);
        pi_c[k] = cphi[k] * (-e * s) + cpi[k] * c;
    }
    if let Some(src) = source {
        let d = duhamel_integrals(ops.omega(), src.profile(), t, quad)?;
        let r = real_mul_vec(&qt, src.rho().values());
        for k in 0..n {
            let e = spec.values[k];
            phi_c[k] += r[k] * (d.kernel[k].im / e);
            pi_c[k] += r[k] * d.kernel[k].re;
        }
    }
    Ok(FlowState {
        phi: phi0.with_values(real_mul_vec(q, &phi_c)),
        pi: pi0.with_values(real_mul_vec(q, &pi_c)),
    })
}

use nalgebra::DMatrix;
use num_complex::Complex;

use kgscat_core::linalg::{from_parts, real_mul_vec, spectral_matrix_real};
use kgscat_core::{lit, FieldOperators, LatticeFunction, Real};

use crate::flow::{duhamel_integrals, propagator};
use crate::{BlockOperator, DoubledVector, DynamicsError, SourceSpec, VectorQuadrature};

/// The symplectic matrix `U(t)` of the interacting flow in the free-particle variables.
pub fn build_u_blocks<T: Real>(ops: &FieldOperators<T>, t: T) -> BlockOperator<T> {
    let spec = ops.omega().spectrum();
    let q = &spec.vectors;
    let cos: Vec<T> = spec.values.iter().map(|&e| (t * e).cos()).collect();
    let sin_lo: Vec<T> = spec.values.iter().map(|&e| (t * e).sin() / e).collect();
    let sin_hi: Vec<T> = spec.values.iter().map(|&e| (t * e).sin() * e).collect();
    let c = spectral_matrix_real(q, &cos);
    let (p, mhalf) = (ops.omega0_half(), ops.omega0_mhalf());
    // ω₀^{-1/2}cos(tω)ω₀^{1/2} and its mirror
    let c1 = mhalf * &c * p;
    let c2 = p * &c * mhalf;
    // ω₀^{1/2}ω^{-1/2}sin(tω)ω^{-1/2}ω₀^{1/2} = ω₀^{1/2}ω⁻¹sin(tω)ω₀^{1/2}, likewise with ω
    let a = p * spectral_matrix_real(q, &sin_lo) * p;
    let b = mhalf * spectral_matrix_real(q, &sin_hi) * mhalf;
    let half: T = lit(0.5);
    let upp = from_parts(&((&c1 + &c2) * half), &(-(&a + &b) * half));
    let ump = from_parts(&((&c2 - &c1) * half), &(-(&a - &b) * half));
    BlockOperator::from_pair(upp, ump)
}

/// `U₀(t) = diag(e^{-itω₀}, e^{itω₀})`.
pub fn build_u0_blocks<T: Real>(ops: &FieldOperators<T>, t: T) -> BlockOperator<T> {
    let e = propagator(ops.omega0(), t);
    let ebar = e.map(|z| z.conj());
    BlockOperator::diagonal(e, ebar)
}

/// `g_t` and `j_t = [g_t; ḡ_t]`.
#[derive(Clone, Debug)]
pub struct SourceOrbit<T: Real> {
    pub g: LatticeFunction<T>,
    pub j: DoubledVector<T>,
    pub residual: f64,
}

/// `g_t = −(1/√2)∫_0^t ω₀^{-1/2}cos[(t−s)ω]J_s ds + (i/√2)∫_0^t ω₀^{1/2}ω⁻¹sin[(t−s)ω]J_s ds`.
pub fn source_orbit<T: Real>(
    ops: &FieldOperators<T>,
    source: &SourceSpec<T>,
    t: T,
    quad: &VectorQuadrature<T>,
) -> Result<SourceOrbit<T>, DynamicsError> {
    let n = ops.grid().n();
    if source.rho().len() != n {
        return Err(DynamicsError::Dimension { expected: n, got: source.rho().len() });
    }
    let spec = ops.omega().spectrum();
    let q = &spec.vectors;
    let d = duhamel_integrals(ops.omega(), source.profile(), t, quad)?;
    let r = real_mul_vec(&q.transpose(), source.rho().values());
    let cos_part = real_mul_vec(q, &DMatrix::from_fn(n, 1, |k, _| r[k] * d.kernel[k].re).column(0).into_owned());
    let sin_part = real_mul_vec(
        q,
        &DMatrix::from_fn(n, 1, |k, _| r[k] * (d.kernel[k].im / spec.values[k])).column(0).into_owned(),
    );
    let s2: T = lit(std::f64::consts::FRAC_1_SQRT_2);
    let g = real_mul_vec(ops.omega0_mhalf(), &cos_part) * Complex::from(-s2)
        + real_mul_vec(ops.omega0_half(), &sin_part) * Complex::new(T::zero(), s2);
    let g = source.rho().with_values(g);
    let j = DoubledVector::real_pair(&g);
    Ok(SourceOrbit { g, j, residual: d.residual })
}

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::{lit, CoreError, Real, SymOperator};

/// Trapezoid rule on `λ = e^u` for the Balakrishnan integral, with step halving.
#[derive(Clone, Copy, Debug)]
pub struct BalakrishnanQuadrature {
    pub initial_step: f64,
    pub tolerance: f64,
    pub max_refinements: usize,
}

impl Default for BalakrishnanQuadrature {
    fn default() -> Self {
        Self { initial_step: 1.0, tolerance: 1e-12, max_refinements: 6 }
    }
}

/// Result of [`fractional_power_apply`].
#[derive(Clone, Debug)]
pub struct FractionalPower<T: Real> {
    pub value: DVector<T>,
    pub step: f64,
    pub nodes: usize,
    pub last_change: f64,
}

/// `A^α v = (sin πα/π) ∫₀^∞ λ^{α-1} (λ+A)⁻¹ A v dλ` without any eigensolve.
///
/// The axis is mapped by `λ = e^u`; the integrand is analytic in the strip
/// `|Im u| < π`, so the trapezoid rule converges geometrically in `1/step`.
/// The truncation window comes from two-sided spectral bounds: Gershgorin
/// above, and `1/‖A⁻¹‖_F` below.
pub fn fractional_power_apply<T: Real>(
    a: &SymOperator<T>,
    alpha: f64,
    v: &DVector<T>,
    quad: &BalakrishnanQuadrature,
) -> Result<FractionalPower<T>, CoreError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CoreError::InvalidParameter(format!("alpha = {alpha} outside (0, 1)")));
    }
    let m = a.matrix();
    let n = m.nrows();
    let chol = Cholesky::new(m.clone()).ok_or(CoreError::NotPositiveDefinite)?;
    let inv = chol.inverse();
    let lo = 1.0 / inv.norm().to_f64().unwrap_or(f64::NAN);
    let hi = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].abs().to_f64().unwrap_or(0.0)).sum::<f64>())
        .fold(0.0, f64::max);
    // a numerically singular matrix passes Cholesky on rounding alone
    if !(lo > 1e3 * T::eps().to_f64().unwrap_or(f64::EPSILON) * hi) {
        return Err(CoreError::NotPositiveDefinite);
    }

    let tail = quad.tolerance * 1e-2;
    // ∫_{-∞}^{u0} e^{αu} μ/(e^u+μ) du ≤ e^{αu0}/α and the upper tail ≤ μ e^{(α-1)u1}/(1-α)
    let u0 = (alpha * tail).ln() / alpha;
    let u1 = (tail * (1.0 - alpha) / hi).ln() / (alpha - 1.0);
    let pref = (std::f64::consts::PI * alpha).sin() / std::f64::consts::PI;
    let av = m * v;

    let node = |u: f64| -> DVector<T> {
        let mut shifted = m.clone();
        let lam = lit::<T>(u.exp());
        for i in 0..n {
            shifted[(i, i)] += lam;
        }
        let c = Cholesky::new(shifted).expect("A + λ stays positive definite");
        c.solve(&av) * lit::<T>((alpha * u).exp())
    };

    let mut h = quad.initial_step;
    let count = ((u1 - u0) / h).ceil() as usize;
    h = (u1 - u0) / count as f64;
    let mut sum = DVector::<T>::zeros(n);
    for i in 0..=count {
        let w = if i == 0 || i == count { 0.5 } else { 1.0 };
        sum += node(u0 + i as f64 * h) * lit::<T>(w);
    }
    let mut nodes = count + 1;
    let mut estimate = &sum * lit::<T>(h * pref);
    let scale = v.norm().to_f64().unwrap_or(1.0).max(f64::MIN_POSITIVE);
    let mut intervals = count;
    let mut last_change = f64::INFINITY;
    for _ in 0..quad.max_refinements {
        // halving: only the midpoints are new
        for i in 0..intervals {
            sum += node(u0 + (i as f64 + 0.5) * h);
        }
        nodes += intervals;
        intervals *= 2;
        h *= 0.5;
        let next = &sum * lit::<T>(h * pref);
        last_change = (&next - &estimate).norm().to_f64().unwrap_or(f64::NAN) / scale;
        estimate = next;
        if last_change <= quad.tolerance {
            return Ok(FractionalPower { value: estimate, step: h, nodes, last_change });
        }
    }
    Err(CoreError::QuadratureNotConverged { refinements: quad.max_refinements, residual: last_change })
}

/// Convenience: the full matrix `A^α` column by column (expensive; tests only).
pub fn fractional_power_matrix<T: Real>(
    a: &SymOperator<T>,
    alpha: f64,
    quad: &BalakrishnanQuadrature,
) -> Result<DMatrix<T>, CoreError> {
    let n = a.n();
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = DVector::zeros(n);
        e[j] = T::one();
        out.set_column(j, &fractional_power_apply(a, alpha, &e, quad)?.value);
    }
    Ok(out)
}

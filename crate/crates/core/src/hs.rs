use nalgebra::DMatrix;
use num_complex::Complex;

use crate::{lit, FieldOperators, Real};

/// Hilbert-Schmidt norm. On the spacing-weighted lattice space the kernel
/// weights cancel, leaving the Frobenius norm of the matrix.
pub fn hs_norm<T: Real>(a: &DMatrix<Complex<T>>) -> T {
    a.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
}

pub fn hs_norm_real<T: Real>(a: &DMatrix<T>) -> T {
    a.norm()
}

/// Largest singular value.
pub fn operator_norm<T: Real>(a: &DMatrix<Complex<T>>) -> T {
    let sv = a.clone().singular_values();
    sv.iter().fold(T::zero(), |m, &s| m.max(s))
}

/// Names of the four diagnostic norms, in report order.
pub const HS_QUANTITIES: [&str; 4] = [
    "omega0^1/2 omega^-1/2 - 1",
    "omega0^-1/2 omega^1/2 - 1",
    "omega0^-1/2 (omega0 - omega) omega0^-1/2",
    "omega0^-1/2 V omega0^-1-eps",
];

/// The four Hilbert-Schmidt norms whose finiteness underlies the
/// implementability of the dynamics.
#[derive(Clone, Debug, PartialEq)]
pub struct HsDiagnostics {
    pub n: usize,
    pub epsilon: f64,
    pub values: [f64; 4],
}

impl HsDiagnostics {
    /// Largest relative change of any entry against `other`.
    pub fn max_relative_change(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| if a.max(*b) == 0.0 { 0.0 } else { (a - b).abs() / a.abs().max(b.abs()) })
            .fold(0.0, f64::max)
    }

    /// `(quantity, n, value)` rows.
    pub fn rows(&self) -> Vec<(String, usize, f64)> {
        HS_QUANTITIES
            .iter()
            .zip(self.values.iter())
            .map(|(q, v)| (q.to_string(), self.n, *v))
            .collect()
    }
}

pub fn hs_diagnostics<T: Real>(ops: &FieldOperators<T>, epsilon: f64) -> HsDiagnostics {
    let n = ops.grid().n();
    let id = DMatrix::<T>::identity(n, n);
    let a = ops.omega0_mhalf();
    let b = ops.omega0_half();
    let first = b * ops.omega_mhalf() - &id;
    let second = a * ops.omega_half() - &id;
    let third = a * (ops.omega0().matrix() - ops.omega().matrix()) * a;
    let tail = ops.omega0_pow(lit::<T>(-1.0 - epsilon));
    let mut va = a.clone();
    for (j, v) in ops.potential().iter().enumerate() {
        // a·diag(V): scale columns
        va.column_mut(j).scale_mut(*v);
    }
    let fourth = va * tail;
    let f = |m: &DMatrix<T>| m.norm().to_f64().unwrap_or(f64::NAN);
    HsDiagnostics { n, epsilon, values: [f(&first), f(&second), f(&third), f(&fourth)] }
}

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::{ComplexField, DVector};
use num_complex::Complex;

use kgscat_core::{lit, Real};

use crate::DynamicsError;

/// Panel settings for the adaptive Gauss–Legendre rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub order: usize,
    /// Absolute tolerance per panel (max-norm of the vector difference).
    pub tolerance: f64,
    /// Initial panel width before any halving.
    pub panel_width: f64,
    pub max_depth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { order: 16, tolerance: 1e-10, panel_width: 0.5, max_depth: 24 }
    }
}

/// Result of a vector integral together with the cost and the worst accepted panel residual.
#[derive(Clone, Debug)]
pub struct Integral<T: Real> {
    pub value: DVector<Complex<T>>,
    pub evaluations: usize,
    pub residual: f64,
}

/// Adaptive Gauss–Legendre integration of vector-valued integrands.
#[derive(Clone, Debug)]
pub struct VectorQuadrature<T: Real> {
    spec: QuadratureSpec,
    rule: Vec<(T, T)>,
}

impl<T: Real> VectorQuadrature<T> {
    pub fn new(spec: QuadratureSpec) -> Self {
        let order = NonZeroUsize::new(spec.order.max(2)).expect("order ≥ 2");
        let rule = GaussLegendre::new(order)
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (lit(x), lit(w)))
            .collect();
        Self { spec, rule }
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    fn panel<F>(&self, f: &F, a: T, b: T, evals: &mut usize) -> DVector<Complex<T>>
    where
        F: Fn(T) -> DVector<Complex<T>>,
    {
        let half = (b - a) * lit(0.5);
        let mid = (a + b) * lit(0.5);
        let mut acc: Option<DVector<Complex<T>>> = None;
        for &(x, w) in &self.rule {
            let v = f(mid + half * x) * Complex::from(w * half);
            *evals += 1;
            acc = Some(match acc {
                Some(s) => s + v,
                None => v,
            });
        }
        acc.expect("non-empty rule")
    }

    /// `∫_a^b f(s) ds` with extra panel edges at `breaks` (kinks of the integrand).
    /// Reversed limits give the oriented integral.
    pub fn integrate<F>(&self, f: F, a: T, b: T, breaks: &[T]) -> Result<Integral<T>, DynamicsError>
    where
        F: Fn(T) -> DVector<Complex<T>>,
    {
        if a == b {
            let n = f(a).len();
            return Ok(Integral { value: DVector::zeros(n), evaluations: 1, residual: 0.0 });
        }
        let (lo, hi, sign) = if a < b { (a, b, T::one()) } else { (b, a, -T::one()) };
        let mut edges = vec![lo];
        let mut interior: Vec<T> = breaks.iter().copied().filter(|&c| c > lo && c < hi).collect();
        interior.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
        edges.extend(interior);
        edges.push(hi);

        let width: T = lit(self.spec.panel_width);
        let mut stack = Vec::new();
        for w in edges.windows(2) {
            let len = w[1] - w[0];
            let pieces = (len / width).ceil().to_usize().unwrap_or(1).max(1);
            let step = len / lit(pieces as f64);
            for p in 0..pieces {
                let s = w[0] + step * lit(p as f64);
                let e = if p + 1 == pieces { w[1] } else { s + step };
                stack.push((s, e, 0usize));
            }
        }

        let mut evals = 0;
        let mut total: Option<DVector<Complex<T>>> = None;
        let mut worst = 0.0f64;
        let eps_floor = T::eps().to_f64().unwrap_or(f64::EPSILON) * 1e3;
        while let Some((s, e, depth)) = stack.pop() {
            let whole = self.panel(&f, s, e, &mut evals);
            let m = (s + e) * lit(0.5);
            let split = self.panel(&f, s, m, &mut evals) + self.panel(&f, m, e, &mut evals);
            let diff = (&split - &whole).iter().fold(0.0f64, |acc, z| {
                acc.max(z.modulus().to_f64().unwrap_or(f64::INFINITY))
            });
            let scale = split.iter().fold(0.0f64, |acc, z| acc.max(z.modulus().to_f64().unwrap_or(0.0)));
            let tol = self.spec.tolerance.max(eps_floor * scale);
            if diff <= tol {
                worst = worst.max(diff);
                total = Some(match total {
                    Some(t) => t + split,
                    None => split,
                });
            } else if depth >= self.spec.max_depth || !diff.is_finite() {
                return Err(DynamicsError::QuadratureNotConverged {
                    a: s.to_f64().unwrap_or(f64::NAN),
                    b: e.to_f64().unwrap_or(f64::NAN),
                    residual: diff,
                });
            } else {
                stack.push((s, m, depth + 1));
                stack.push((m, e, depth + 1));
            }
        }
        let value = total.expect("at least one panel") * Complex::from(sign);
        Ok(Integral { value, evaluations: evals, residual: worst })
    }
}

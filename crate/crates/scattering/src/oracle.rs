use kgscat_core::linalg::real_mul_vec;
use kgscat_core::{lattice_dispersion, operator_norm, CMat, CVec, FieldOperators64, Grid64, LatticeFourier64};
use nalgebra::{DMatrix, Matrix2, Vector2};
use num_complex::Complex;

use crate::Packet;

/// Reflection and transmission amplitudes of the lattice equation
/// `−(ψ_{i+1} − 2ψ_i + ψ_{i−1})/a² + V_iψ_i = Eψ_i` at `E = 4/a²·sin²(ka/2)`, `k > 0`,
/// for a wave incident from the left: `ψ ~ e^{ikx} + r e^{-ikx}` on the left, `t e^{ikx}` on the right.
pub fn transfer_matrix(grid: &Grid64, v: &[f64], k: f64) -> (Complex<f64>, Complex<f64>) {
    let a = grid.spacing();
    let x = grid.points();
    let n = x.len();
    let e = 4.0 / (a * a) * (k * a / 2.0).sin().powi(2);
    let plane = |x: f64| Complex::new((k * x).cos(), (k * x).sin());
    let mut next = plane(x[n - 1] + a);
    let mut cur = plane(x[n - 1]);
    for i in (1..n).rev() {
        let prev = cur * (2.0 + a * a * (v[i] - e)) - next;
        next = cur;
        cur = prev;
    }
    let m = Matrix2::new(plane(x[0]), plane(x[0]).conj(), plane(x[1]), plane(x[1]).conj());
    let amp = m.lu().solve(&Vector2::new(cur, next)).expect("plane waves independent for 0 < ka < π");
    (amp[1] / amp[0], Complex::from(1.0) / amp[0])
}

/// Packet averages of reflection probability and transmission amplitude, from `S` and from the oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferComparison {
    pub k0: f64,
    pub reflection_s: f64,
    pub reflection_oracle: f64,
    pub transmission_s: Complex<f64>,
    pub transmission_oracle: Complex<f64>,
}

impl TransferComparison {
    pub fn discrepancy(&self) -> f64 {
        (self.reflection_s - self.reflection_oracle)
            .abs()
            .max((self.transmission_s - self.transmission_oracle).norm())
    }
}

/// Compares `S` on right-moving packets with the stationary coefficients: the weight of `Sf`
/// on negative momenta against `Σ|r(k)|²|f̂(k)|²`, and `(f, Sf)` against `Σ t(k)|f̂(k)|²`.
pub fn transfer_comparison(ops: &FieldOperators64, s: &CMat<f64>, packets: &[Packet]) -> Vec<TransferComparison> {
    let grid = ops.grid();
    let fourier = LatticeFourier64::new(grid);
    let v: Vec<f64> = ops.potential().iter().copied().collect();
    let dk = fourier.dk();
    let momenta = fourier.momenta();
    let coeffs: Vec<Option<(Complex<f64>, Complex<f64>)>> =
        momenta.iter().map(|&k| (k > 0.0).then(|| transfer_matrix(grid, &v, k))).collect();
    packets
        .iter()
        .map(|p| {
            let fh = fourier.forward(p.f.values());
            let sfh = fourier.forward(&(s * p.f.values()));
            let (mut rs, mut ro) = (0.0, 0.0);
            let (mut ts, mut to) = (Complex::from(0.0), Complex::from(0.0));
            for (i, &k) in momenta.iter().enumerate() {
                if k < 0.0 {
                    rs += sfh[i].norm_sqr() * dk;
                }
                if let Some((r, t)) = coeffs[i] {
                    let w = fh[i].norm_sqr() * dk;
                    ro += r.norm_sqr() * w;
                    to += t * w;
                    ts += fh[i].conj() * sfh[i] * dk;
                }
            }
            TransferComparison { k0: p.k0, reflection_s: rs, reflection_oracle: ro, transmission_s: ts, transmission_oracle: to }
        })
        .collect()
}

/// `‖V(h₀+1)⁻¹F(|x| ≥ R)‖` for each radius: the discrete substitute for the absence
/// of positive eigenvalues, expected to decay geometrically.
pub fn geometric_decay(ops: &FieldOperators64, radii: &[f64]) -> Vec<(f64, f64)> {
    let n = ops.grid().n();
    let resolvent = (ops.h0().matrix() + DMatrix::identity(n, n))
        .try_inverse()
        .expect("h₀ + 1 is positive definite");
    let vr = DMatrix::from_diagonal(ops.potential()) * resolvent;
    radii
        .iter()
        .map(|&r| {
            let mut m = vr.clone();
            for (j, &x) in ops.grid().points().iter().enumerate() {
                if x.abs() < r {
                    m.column_mut(j).fill(0.0);
                }
            }
            (r, operator_norm(&m.map(Complex::from)))
        })
        .collect()
}

/// `|(g, e^{itω₀}f)|` at the given times.
pub fn riemann_lebesgue(ops: &FieldOperators64, g: &CVec<f64>, f: &CVec<f64>, times: &[f64]) -> Vec<(f64, f64)> {
    let s = ops.omega0().spectrum();
    let cf = real_mul_vec(&s.vectors.transpose(), f);
    let cg = real_mul_vec(&s.vectors.transpose(), g);
    let a = ops.grid().spacing();
    times
        .iter()
        .map(|&t| {
            let sum: Complex<f64> = cg
                .iter()
                .zip(cf.iter())
                .zip(s.values.iter())
                .map(|((g, f), &e)| g.conj() * f * Complex::new((t * e).cos(), (t * e).sin()))
                .sum();
            (t, (sum * a).norm())
        })
        .collect()
}

/// Lattice dispersion on the DFT momenta of a grid.
pub fn dispersion_on_momenta(ops: &FieldOperators64) -> Vec<f64> {
    let g = ops.grid();
    g.momenta().iter().map(|&k| lattice_dispersion(k, g.spacing(), ops.mass())).collect()
}

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::{lit, Grid, Real};

/// `√(4/a²·sin²(ka/2) + m²)`: the free lattice dispersion. On the ring the
/// DFT diagonalises `ω₀` with exactly these eigenvalues.
pub fn lattice_dispersion<T: Real>(k: T, spacing: T, mass: T) -> T {
    let s = (k * spacing * lit::<T>(0.5)).sin() * lit::<T>(2.0) / spacing;
    (s * s + mass * mass).sqrt()
}

/// Discretised `f̂(k) = (2π)^{-1/2} ∫ e^{-ikx} f(x) dx` on the lattice
/// momenta of a grid, plus its exact inverse.
#[derive(Clone, Debug)]
pub struct LatticeFourier<T: Real> {
    momenta: Vec<T>,
    dk: T,
    forward: DMatrix<Complex<T>>,
    inverse: DMatrix<Complex<T>>,
}

impl<T: Real> LatticeFourier<T> {
    pub fn new(grid: &Grid<T>) -> Self {
        let n = grid.n();
        let k = grid.momenta();
        let dk = grid.momentum_spacing();
        let a = grid.spacing();
        let norm = T::one() / T::two_pi().sqrt();
        let x = grid.points();
        let forward = DMatrix::from_fn(n, n, |j, i| {
            let ph = -k[j] * x[i];
            Complex::new(ph.cos(), ph.sin()) * (a * norm)
        });
        let inverse = DMatrix::from_fn(n, n, |i, j| {
            let ph = k[j] * x[i];
            Complex::new(ph.cos(), ph.sin()) * (dk * norm)
        });
        Self { momenta: k, dk, forward, inverse }
    }

    pub fn momenta(&self) -> &[T] {
        &self.momenta
    }

    pub fn dk(&self) -> T {
        self.dk
    }

    pub fn forward(&self, f: &DVector<Complex<T>>) -> DVector<Complex<T>> {
        &self.forward * f
    }

    pub fn inverse(&self, fhat: &DVector<Complex<T>>) -> DVector<Complex<T>> {
        &self.inverse * fhat
    }

    pub fn forward_matrix(&self) -> &DMatrix<Complex<T>> {
        &self.forward
    }

    pub fn inverse_matrix(&self) -> &DMatrix<Complex<T>> {
        &self.inverse
    }

    /// `Σ |f̂|² Δk` restricted to momenta passing `keep`.
    pub fn band_norm_squared(&self, fhat: &DVector<Complex<T>>, keep: impl Fn(T) -> bool) -> T {
        let mut s = T::zero();
        for (z, &k) in fhat.iter().zip(self.momenta.iter()) {
            if keep(k) {
                s += z.norm_sqr();
            }
        }
        s * self.dk
    }
}

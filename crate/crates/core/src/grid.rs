use nalgebra::DVector;
use num_complex::Complex;

use crate::{lit, CoreError, Real};

/// How the lattice Laplacian closes at the ends of the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Ring: point `n-1` neighbours point `0`. The DFT diagonalises the
    /// free Laplacian exactly.
    Periodic,
    /// Hard walls just outside `x = ±L`.
    Dirichlet,
}

/// Uniform cell-centred lattice on `[-L, L]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T> {
    n: usize,
    half_width: T,
    spacing: T,
    boundary: Boundary,
    points: Vec<T>,
}

impl<T: Real> Grid<T> {
    pub fn new(n: usize, half_width: T, boundary: Boundary) -> Result<Self, CoreError> {
        if n < 8 {
            return Err(CoreError::InvalidGrid(format!("n = {n} < 8")));
        }
        if !(half_width > T::zero()) {
            return Err(CoreError::InvalidGrid(format!("L = {half_width} must be positive")));
        }
        let spacing = lit::<T>(2.0) * half_width / lit(n as f64);
        let half = lit::<T>(0.5);
        let points = (0..n)
            .map(|i| -half_width + (lit::<T>(i as f64) + half) * spacing)
            .collect();
        Ok(Self { n, half_width, spacing, boundary, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    /// Lattice momenta `2πj/(na)`, ascending, `j = -⌊n/2⌋ ..`.
    pub fn momenta(&self) -> Vec<T> {
        let dk = self.momentum_spacing();
        let j0 = (self.n / 2) as f64;
        (0..self.n).map(|j| (lit::<T>(j as f64 - j0)) * dk).collect()
    }

    pub fn momentum_spacing(&self) -> T {
        T::two_pi() / (lit::<T>(self.n as f64) * self.spacing)
    }

    /// Samples a real function at the lattice points.
    pub fn sample<F: Fn(T) -> T>(&self, f: F) -> DVector<T> {
        DVector::from_iterator(self.n, self.points.iter().map(|&x| f(x)))
    }

    /// Samples a complex function at the lattice points.
    pub fn sample_complex<F: Fn(T) -> Complex<T>>(&self, f: F) -> DVector<Complex<T>> {
        DVector::from_iterator(self.n, self.points.iter().map(|&x| f(x)))
    }

    /// Spacing-weighted inner product, antilinear in the first slot.
    pub fn inner(&self, u: &DVector<Complex<T>>, v: &DVector<Complex<T>>) -> Complex<T> {
        u.dotc(v) * Complex::from(self.spacing)
    }

    pub fn norm(&self, u: &DVector<Complex<T>>) -> T {
        (u.norm_squared() * self.spacing).sqrt()
    }
}

/// A complex field sampled on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFunction<T: Real> {
    spacing: T,
    values: DVector<Complex<T>>,
}

impl<T: Real> LatticeFunction<T> {
    pub fn new(grid: &Grid<T>, values: DVector<Complex<T>>) -> Result<Self, CoreError> {
        if values.len() != grid.n() {
            return Err(CoreError::Dimension { expected: grid.n(), got: values.len() });
        }
        Ok(Self { spacing: grid.spacing(), values })
    }

    pub fn zeros(grid: &Grid<T>) -> Self {
        Self { spacing: grid.spacing(), values: DVector::zeros(grid.n()) }
    }

    pub fn from_real(grid: &Grid<T>, f: impl Fn(T) -> T) -> Self {
        Self { spacing: grid.spacing(), values: grid.sample(f).map(Complex::from) }
    }

    pub fn from_complex(grid: &Grid<T>, f: impl Fn(T) -> Complex<T>) -> Self {
        Self { spacing: grid.spacing(), values: grid.sample_complex(f) }
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn values(&self) -> &DVector<Complex<T>> {
        &self.values
    }

    pub fn into_values(self) -> DVector<Complex<T>> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.values.dotc(&other.values) * Complex::from(self.spacing)
    }

    pub fn norm(&self) -> T {
        (self.values.norm_squared() * self.spacing).sqrt()
    }

    pub fn conj(&self) -> Self {
        Self { spacing: self.spacing, values: self.values.map(|z| z.conj()) }
    }

    pub fn real_part(&self) -> Self {
        Self { spacing: self.spacing, values: self.values.map(|z| Complex::from(z.re)) }
    }

    pub fn imag_part(&self) -> Self {
        Self { spacing: self.spacing, values: self.values.map(|z| Complex::from(z.im)) }
    }

    pub fn with_values(&self, values: DVector<Complex<T>>) -> Self {
        assert_eq!(values.len(), self.values.len());
        Self { spacing: self.spacing, values }
    }

    /// Rescales to unit spacing-weighted norm; the zero function is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == T::zero() {
            return self.clone();
        }
        self.with_values(self.values.map(|z| z / n))
    }
}

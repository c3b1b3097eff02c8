use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::linalg::{max_abs_real, real_mul_vec, spectral_matrix, spectral_matrix_real};
use crate::{lit, Boundary, CoreError, Grid, PotentialSpec, Real};

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct Spectrum<T: Real> {
    pub values: DVector<T>,
    pub vectors: DMatrix<T>,
}

impl<T: Real> Spectrum<T> {
    fn from_eigen(eig: SymmetricEigen<T, nalgebra::Dyn>) -> Self {
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("finite"));
        let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Self { values, vectors }
    }

    /// `max |QᵀQ - I|`.
    pub fn orthogonality_defect(&self) -> T {
        let n = self.values.len();
        let g = self.vectors.transpose() * &self.vectors - DMatrix::<T>::identity(n, n);
        max_abs_real(&g)
    }
}

/// Dense real-symmetric operator with a lazily cached spectral decomposition.
#[derive(Debug)]
pub struct SymOperator<T: Real> {
    matrix: DMatrix<T>,
    spectrum: OnceLock<Spectrum<T>>,
}

impl<T: Real> Clone for SymOperator<T> {
    fn clone(&self) -> Self {
        let spectrum = OnceLock::new();
        if let Some(s) = self.spectrum.get() {
            let _ = spectrum.set(s.clone());
        }
        Self { matrix: self.matrix.clone(), spectrum }
    }
}

impl<T: Real> SymOperator<T> {
    /// Wraps a matrix after checking `‖A - Aᵀ‖_max ≤ tol·‖A‖_max`.
    pub fn new(matrix: DMatrix<T>) -> Result<Self, CoreError> {
        if !matrix.is_square() {
            return Err(CoreError::Dimension { expected: matrix.nrows(), got: matrix.ncols() });
        }
        let scale = max_abs_real(&matrix);
        let defect = max_abs_real(&(&matrix - matrix.transpose()));
        let tol = Self::symmetry_tolerance() * scale;
        if defect > tol {
            return Err(CoreError::NotSymmetric {
                defect: defect.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { matrix, spectrum: OnceLock::new() })
    }

    fn symmetry_tolerance() -> T {
        lit::<T>(1e-12).max(lit::<T>(100.0) * T::eps())
    }

    fn with_spectrum(spectrum: Spectrum<T>) -> Self {
        let matrix = spectral_matrix_real(&spectrum.vectors, spectrum.values.as_slice());
        let matrix = (&matrix + matrix.transpose()) * lit::<T>(0.5);
        let cell = OnceLock::new();
        let _ = cell.set(spectrum);
        Self { matrix, spectrum: cell }
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn spectrum(&self) -> &Spectrum<T> {
        self.spectrum
            .get_or_init(|| Spectrum::from_eigen(SymmetricEigen::new(self.matrix.clone())))
    }

    pub fn min_eigenvalue(&self) -> T {
        self.spectrum().values[0]
    }

    pub fn max_eigenvalue(&self) -> T {
        let v = &self.spectrum().values;
        v[v.len() - 1]
    }

    /// Spectral calculus `φ(A)`. Fails if `φ` is not finite at some eigenvalue.
    pub fn function<F: Fn(T) -> T>(&self, phi: F) -> Result<Self, CoreError> {
        let spec = self.spectrum();
        let mut mapped = Vec::with_capacity(spec.values.len());
        for &e in spec.values.iter() {
            let v = phi(e);
            if !v.is_finite() {
                return Err(CoreError::Domain { eigenvalue: e.to_f64().unwrap_or(f64::NAN) });
            }
            mapped.push((v, mapped.len()));
        }
        mapped.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let n = mapped.len();
        let values = DVector::from_iterator(n, mapped.iter().map(|p| p.0));
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, &(_, src)) in mapped.iter().enumerate() {
            vectors.set_column(dst, &spec.vectors.column(src));
        }
        Ok(Self::with_spectrum(Spectrum { values, vectors }))
    }

    /// Real matrix `φ(A)` without wrapping it as an operator.
    pub fn function_matrix<F: Fn(T) -> T>(&self, phi: F) -> DMatrix<T> {
        let spec = self.spectrum();
        let f: Vec<T> = spec.values.iter().map(|&e| phi(e)).collect();
        spectral_matrix_real(&spec.vectors, &f)
    }

    /// Complex matrix `φ(A)`, e.g. a propagator.
    pub fn complex_function<F: Fn(T) -> Complex<T>>(&self, phi: F) -> DMatrix<Complex<T>> {
        let spec = self.spectrum();
        let f: Vec<Complex<T>> = spec.values.iter().map(|&e| phi(e)).collect();
        spectral_matrix(&spec.vectors, &f)
    }

    /// `φ(A)v` through the eigenbasis, without forming `φ(A)`.
    pub fn apply_function<F: Fn(T) -> Complex<T>>(&self, phi: F, v: &DVector<Complex<T>>) -> DVector<Complex<T>> {
        let spec = self.spectrum();
        let qt = spec.vectors.transpose();
        let mut c = real_mul_vec(&qt, v);
        for (ci, &e) in c.iter_mut().zip(spec.values.iter()) {
            *ci *= phi(e);
        }
        real_mul_vec(&spec.vectors, &c)
    }

    pub fn apply(&self, v: &DVector<Complex<T>>) -> DVector<Complex<T>> {
        real_mul_vec(&self.matrix, v)
    }
}

/// Second-order central-difference `-Δ`.
pub fn build_laplacian<T: Real>(grid: &Grid<T>) -> SymOperator<T> {
    let n = grid.n();
    let inv_a2 = T::one() / (grid.spacing() * grid.spacing());
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = lit::<T>(2.0) * inv_a2;
        if i + 1 < n {
            m[(i, i + 1)] = -inv_a2;
            m[(i + 1, i)] = -inv_a2;
        }
    }
    if grid.boundary() == Boundary::Periodic {
        m[(0, n - 1)] = -inv_a2;
        m[(n - 1, 0)] = -inv_a2;
    }
    SymOperator::new(m).expect("stencil is symmetric")
}

/// `h = h₀ + diag(V)`; rejects potentials that break non-negativity or decay.
pub fn build_hamiltonian<T: Real>(grid: &Grid<T>, potential: &PotentialSpec<T>) -> Result<SymOperator<T>, CoreError> {
    let v = potential.samples(grid)?;
    let mut m = build_laplacian(grid).matrix().clone();
    for (i, vi) in v.iter().enumerate() {
        m[(i, i)] += *vi;
    }
    SymOperator::new(m)
}

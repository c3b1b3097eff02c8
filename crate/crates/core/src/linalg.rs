//! Dense helpers for mixing real and complex matrices.
//!
//! Complex products are split into real GEMMs where one factor is real;
//! nalgebra only has a fast kernel for the real case.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use nalgebra::ComplexField;

use crate::Real;

pub fn to_complex<T: Real>(a: &DMatrix<T>) -> DMatrix<Complex<T>> {
    a.map(Complex::from)
}

pub fn re<T: Real>(a: &DMatrix<Complex<T>>) -> DMatrix<T> {
    a.map(|z| z.re)
}

pub fn im<T: Real>(a: &DMatrix<Complex<T>>) -> DMatrix<T> {
    a.map(|z| z.im)
}

pub fn from_parts<T: Real>(re: &DMatrix<T>, im: &DMatrix<T>) -> DMatrix<Complex<T>> {
    re.zip_map(im, |a, b| Complex::new(a, b))
}

/// `A·C` with `A` real.
pub fn real_mul_complex<T: Real>(a: &DMatrix<T>, c: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    from_parts(&(a * re(c)), &(a * im(c)))
}

/// `C·A` with `A` real.
pub fn complex_mul_real<T: Real>(c: &DMatrix<Complex<T>>, a: &DMatrix<T>) -> DMatrix<Complex<T>> {
    from_parts(&(re(c) * a), &(im(c) * a))
}

/// Complex product through four real GEMMs.
pub fn complex_mul<T: Real>(a: &DMatrix<Complex<T>>, b: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let (ar, ai, br, bi) = (re(a), im(a), re(b), im(b));
    from_parts(&(&ar * &br - &ai * &bi), &(&ar * &bi + &ai * &br))
}

/// `A·v` with `A` real and `v` complex.
pub fn real_mul_vec<T: Real>(a: &DMatrix<T>, v: &DVector<Complex<T>>) -> DVector<Complex<T>> {
    let r = a * v.map(|z| z.re);
    let i = a * v.map(|z| z.im);
    r.zip_map(&i, |x, y| Complex::new(x, y))
}

/// `Q·diag(f)·Qᵀ` for real orthogonal `Q` and complex weights.
pub fn spectral_matrix<T: Real>(q: &DMatrix<T>, f: &[Complex<T>]) -> DMatrix<Complex<T>> {
    let n = q.nrows();
    let mut qr = q.clone();
    let mut qi = q.clone();
    for (j, fj) in f.iter().enumerate() {
        for i in 0..n {
            let v = q[(i, j)];
            qr[(i, j)] = v * fj.re;
            qi[(i, j)] = v * fj.im;
        }
    }
    let qt = q.transpose();
    from_parts(&(qr * &qt), &(qi * &qt))
}

/// `Q·diag(f)·Qᵀ` with real weights.
pub fn spectral_matrix_real<T: Real>(q: &DMatrix<T>, f: &[T]) -> DMatrix<T> {
    let mut qf = q.clone();
    for (j, &fj) in f.iter().enumerate() {
        qf.column_mut(j).scale_mut(fj);
    }
    qf * q.transpose()
}

/// Entry-wise conjugate `Ā` as a matrix (for a matrix `A`, `Āf = conj(A conj f)`).
pub fn bar<T: Real>(a: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    a.map(|z| z.conj())
}

pub fn conj_vec<T: Real>(v: &DVector<Complex<T>>) -> DVector<Complex<T>> {
    v.map(|z| z.conj())
}

pub fn max_abs<T: Real>(a: &DMatrix<Complex<T>>) -> T {
    a.iter().fold(T::zero(), |m, z| m.max(z.modulus()))
}

pub fn max_abs_real<T: Real>(a: &DMatrix<T>) -> T {
    a.iter().fold(T::zero(), |m, z| m.max(z.abs()))
}

pub fn identity<T: Real>(n: usize) -> DMatrix<Complex<T>> {
    DMatrix::identity(n, n)
}

use kgscat_core::{lit, Real};
use nalgebra::DMatrix;
use num_complex::Complex;

use crate::{FockError, FockSpace, FockState};

/// Matrix of a linear map on the truncated space, column by column.
pub fn operator_matrix<T: Real>(
    space: &std::sync::Arc<FockSpace>,
    op: impl Fn(&FockState<T>) -> FockState<T>,
) -> DMatrix<Complex<T>> {
    let n = space.dim();
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut e = FockState::zeros(space);
        e.amps[k] = Complex::new(T::one(), T::zero());
        m.set_column(k, &op(&e).amps);
    }
    m
}

fn column<T: Real>(a: &DMatrix<Complex<T>>, i: usize) -> Vec<Complex<T>> {
    a.column(i).iter().copied().collect()
}

impl<T: Real> FockState<T> {
    /// `dΓ(T) = Σᵢⱼ Tᵢⱼ c*(eᵢ)c(eⱼ)`, number preserving.
    pub fn dgamma(&self, t: &DMatrix<Complex<T>>) -> Self {
        let d = self.space().modes();
        let mut out = FockState::zeros(self.space());
        for j in 0..d {
            let lowered = self.annihilate_mode(j);
            if lowered.norm() == T::zero() {
                continue;
            }
            for i in 0..d {
                if t[(i, j)].norm_sqr() > T::zero() {
                    out.amps += lowered.create_mode(i).amps * t[(i, j)];
                }
            }
        }
        out
    }

    /// `N = dΓ(1)`.
    pub fn number(&self) -> Self {
        let d = self.space().modes();
        self.dgamma(&DMatrix::identity(d, d))
    }

    /// `Γ(A)`: on `|n⟩ = Πᵢ c*(eᵢ)^{nᵢ}/√(nᵢ!) Ω` it gives `Πᵢ c*(Aeᵢ)^{nᵢ}/√(nᵢ!) Ω`.
    pub fn gamma(&self, a: &DMatrix<Complex<T>>) -> Result<Self, FockError> {
        let d = self.space().modes();
        if a.nrows() != d || a.ncols() != d {
            return Err(FockError::Dimension { expected: d, got: a.nrows() });
        }
        let norm = a.clone().singular_values().max().to_f64().unwrap_or(f64::NAN);
        if !(norm <= 1.0 + 100.0 * T::eps().to_f64().unwrap_or(f64::EPSILON)) {
            return Err(FockError::NotContraction { norm });
        }
        let cols: Vec<_> = (0..d).map(|i| column(a, i)).collect();
        let mut out = FockState::zeros(self.space());
        for k in 0..self.amps.len() {
            let amp = self.amps[k];
            if amp.norm_sqr() == T::zero() {
                continue;
            }
            let mut v = FockState::vacuum(self.space());
            let mut fact = 1.0;
            for (i, &ni) in self.space().occupation(k).iter().enumerate() {
                for r in 1..=ni as usize {
                    v = v.create(&cols[i]);
                    fact *= r as f64;
                }
            }
            out.amps += v.amps * (amp / Complex::new(lit::<T>(fact.sqrt()), T::zero()));
        }
        Ok(out)
    }
}

/// `e^{itX}` for a truncated operator matrix `X`.
pub fn exp_i<T: Real>(x: &DMatrix<Complex<T>>, t: T) -> DMatrix<Complex<T>> {
    (x * Complex::new(T::zero(), t)).exp()
}

use std::sync::Arc;

use kgscat_core::{lit, Real};
use nalgebra::{ComplexField, DVector};
use num_complex::Complex;

use crate::FockSpace;

/// Vector in a truncated Fock space. `dropped` is the norm of whatever the
/// operation that produced it pushed above `N_max`.
#[derive(Clone, Debug)]
pub struct FockState<T: Real> {
    space: Arc<FockSpace>,
    pub amps: DVector<Complex<T>>,
    pub dropped: T,
}

fn c<T: Real>(x: f64) -> Complex<T> {
    Complex::new(lit(x), T::zero())
}

impl<T: Real> FockState<T> {
    pub fn from_amps(space: &Arc<FockSpace>, amps: DVector<Complex<T>>) -> Self {
        assert_eq!(amps.len(), space.dim(), "amplitude vector must match the basis");
        Self { space: space.clone(), amps, dropped: T::zero() }
    }

    pub fn zeros(space: &Arc<FockSpace>) -> Self {
        Self::from_amps(space, DVector::zeros(space.dim()))
    }

    /// `Ω`.
    pub fn vacuum(space: &Arc<FockSpace>) -> Self {
        let mut s = Self::zeros(space);
        s.amps[0] = Complex::new(T::one(), T::zero());
        s
    }

    /// `|n₁ … n_d⟩`, normalised.
    pub fn basis(space: &Arc<FockSpace>, occupation: &[u8]) -> Option<Self> {
        let k = space.index_of(occupation)?;
        let mut s = Self::zeros(space);
        s.amps[k] = Complex::new(T::one(), T::zero());
        Some(s)
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    fn same(&self, amps: DVector<Complex<T>>, dropped: T) -> Self {
        Self { space: self.space.clone(), amps, dropped }
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps.dotc(&other.amps)
    }

    pub fn norm(&self) -> T {
        self.amps.norm()
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        self.same(&self.amps * z, self.dropped * z.modulus())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same(&self.amps + &o.amps, self.dropped + o.dropped)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same(&self.amps - &o.amps, self.dropped + o.dropped)
    }

    /// Highest particle number with a nonzero amplitude.
    pub fn top_sector(&self) -> usize {
        (0..self.amps.len()).filter(|&k| self.amps[k].norm_sqr() > T::zero()).map(|k| self.space.particles(k)).max().unwrap_or(0)
    }

    /// Norm of the `n`-particle component.
    pub fn sector_norm(&self, n: usize) -> T {
        self.amps.rows_range(self.space.sector(n)).norm()
    }

    /// `c*(eᵢ)`.
    pub fn create_mode(&self, mode: usize) -> Self {
        let mut out = DVector::zeros(self.amps.len());
        let mut lost = T::zero();
        for k in 0..self.amps.len() {
            let a = self.amps[k];
            if a.norm_sqr() == T::zero() {
                continue;
            }
            let w = c::<T>((self.space.occupation(k)[mode] as f64 + 1.0).sqrt());
            match self.space.raised(mode, k) {
                Some(j) => out[j] += a * w,
                None => lost += (a * w).norm_sqr(),
            }
        }
        self.same(out, lost.sqrt())
    }

    /// `c(eᵢ)`.
    pub fn annihilate_mode(&self, mode: usize) -> Self {
        let mut out = DVector::zeros(self.amps.len());
        for k in 0..self.amps.len() {
            if let Some(j) = self.space.lowered(mode, k) {
                out[j] += self.amps[k] * c::<T>((self.space.occupation(k)[mode] as f64).sqrt());
            }
        }
        self.same(out, T::zero())
    }

    /// `c*(f) = Σ fᵢ c*(eᵢ)`.
    pub fn create(&self, f: &[Complex<T>]) -> Self {
        assert_eq!(f.len(), self.space.modes());
        let mut out = Self::zeros(&self.space);
        let mut lost = T::zero();
        for (i, &fi) in f.iter().enumerate() {
            if fi.norm_sqr() == T::zero() {
                continue;
            }
            let s = self.create_mode(i);
            lost += s.dropped * fi.modulus();
            out.amps += s.amps * fi;
        }
        out.dropped = lost;
        out
    }

    /// `c(f) = Σ f̄ᵢ c(eᵢ)`, antilinear in `f`.
    pub fn annihilate(&self, f: &[Complex<T>]) -> Self {
        assert_eq!(f.len(), self.space.modes());
        let mut out = Self::zeros(&self.space);
        for (i, &fi) in f.iter().enumerate() {
            if fi.norm_sqr() == T::zero() {
                continue;
            }
            out.amps += self.annihilate_mode(i).amps * fi.conj();
        }
        out
    }

    /// `τ(f) = (c(f) + c*(f))/√2`.
    pub fn segal(&self, f: &[Complex<T>]) -> Self {
        self.annihilate(f).add(&self.create(f)).scale(c(std::f64::consts::FRAC_1_SQRT_2))
    }

    /// `ψ(v) = c(v₊) + c*(v̄₋)`.
    pub fn psi(&self, plus: &[Complex<T>], minus: &[Complex<T>]) -> Self {
        let bar: Vec<_> = minus.iter().map(|z| z.conj()).collect();
        self.annihilate(plus).add(&self.create(&bar))
    }

    /// `ψ(v)* = ψ(Cv) = c*(v₊) + c(v̄₋)`.
    pub fn psi_adjoint(&self, plus: &[Complex<T>], minus: &[Complex<T>]) -> Self {
        let bar: Vec<_> = minus.iter().map(|z| z.conj()).collect();
        self.create(plus).add(&self.annihilate(&bar))
    }
}

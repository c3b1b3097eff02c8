use nalgebra::DMatrix;
use num_complex::Complex;

use kgscat_core::linalg::{bar, complex_mul, max_abs};
use kgscat_core::{LatticeFunction, Real};

/// Element `[v₊; v₋]` of the doubled space `ℋ₊ ⊕ ℋ₋`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubledVector<T: Real> {
    pub plus: LatticeFunction<T>,
    pub minus: LatticeFunction<T>,
}

impl<T: Real> DoubledVector<T> {
    pub fn new(plus: LatticeFunction<T>, minus: LatticeFunction<T>) -> Self {
        assert_eq!(plus.len(), minus.len(), "components on one grid");
        Self { plus, minus }
    }

    /// `[f; f̄]`, the typical element of the real subspace `ℋ_C`.
    pub fn real_pair(f: &LatticeFunction<T>) -> Self {
        Self { plus: f.clone(), minus: f.conj() }
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    /// `C[v₊; v₋] = [v̄₋; v̄₊]`.
    pub fn conjugate(&self) -> Self {
        Self { plus: self.minus.conj(), minus: self.plus.conj() }
    }

    /// `Q[v₊; v₋] = [v₊; -v₋]`.
    pub fn q(&self) -> Self {
        Self { plus: self.plus.clone(), minus: self.minus.with_values(-self.minus.values()) }
    }

    /// `(u, v) = (u₊, v₊) + (u₋, v₋)`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.plus.inner(&other.plus) + self.minus.inner(&other.minus)
    }

    pub fn norm(&self) -> T {
        (self.plus.norm() * self.plus.norm() + self.minus.norm() * self.minus.norm()).sqrt()
    }

    /// `‖Cv − v‖`; zero on `ℋ_C`.
    pub fn reality_defect(&self) -> T {
        (self.conjugate() - self.clone()).norm()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            plus: self.plus.with_values(self.plus.values() * c),
            minus: self.minus.with_values(self.minus.values() * c),
        }
    }
}

impl<T: Real> std::ops::Add for DoubledVector<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            plus: self.plus.with_values(self.plus.values() + o.plus.values()),
            minus: self.minus.with_values(self.minus.values() + o.minus.values()),
        }
    }
}

impl<T: Real> std::ops::Sub for DoubledVector<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            plus: self.plus.with_values(self.plus.values() - o.plus.values()),
            minus: self.minus.with_values(self.minus.values() - o.minus.values()),
        }
    }
}

/// 2×2 block operator on the doubled space.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator<T: Real> {
    pub pp: DMatrix<Complex<T>>,
    pub pm: DMatrix<Complex<T>>,
    pub mp: DMatrix<Complex<T>>,
    pub mm: DMatrix<Complex<T>>,
}

impl<T: Real> BlockOperator<T> {
    pub fn new(
        pp: DMatrix<Complex<T>>,
        pm: DMatrix<Complex<T>>,
        mp: DMatrix<Complex<T>>,
        mm: DMatrix<Complex<T>>,
    ) -> Self {
        let n = pp.nrows();
        for b in [&pp, &pm, &mp, &mm] {
            assert!(b.nrows() == n && b.ncols() == n, "blocks must be n×n");
        }
        Self { pp, pm, mp, mm }
    }

    /// Blocks `[[A, B̄], [B, Ā]]`: the form of every operator commuting with `C`.
    pub fn from_pair(a: DMatrix<Complex<T>>, b: DMatrix<Complex<T>>) -> Self {
        let (abar, bbar) = (bar(&a), bar(&b));
        Self::new(a, bbar, b, abar)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(DMatrix::identity(n, n), DMatrix::identity(n, n))
    }

    pub fn diagonal(pp: DMatrix<Complex<T>>, mm: DMatrix<Complex<T>>) -> Self {
        let n = pp.nrows();
        Self::new(pp, DMatrix::zeros(n, n), DMatrix::zeros(n, n), mm)
    }

    /// `Q = P₊ − P₋`.
    pub fn q(n: usize) -> Self {
        Self::diagonal(DMatrix::identity(n, n), -DMatrix::identity(n, n))
    }

    pub fn n(&self) -> usize {
        self.pp.nrows()
    }

    /// `(A*)_{εε'} = (A_{ε'ε})*`.
    pub fn adjoint(&self) -> Self {
        Self::new(self.pp.adjoint(), self.mp.adjoint(), self.pm.adjoint(), self.mm.adjoint())
    }

    /// Blockwise `Ā`.
    pub fn bar(&self) -> Self {
        Self::new(bar(&self.pp), bar(&self.pm), bar(&self.mp), bar(&self.mm))
    }

    /// `CAC`.
    pub fn conjugated(&self) -> Self {
        Self::new(bar(&self.mm), bar(&self.mp), bar(&self.pm), bar(&self.pp))
    }

    pub fn apply(&self, v: &DoubledVector<T>) -> DoubledVector<T> {
        let (p, m) = (v.plus.values(), v.minus.values());
        DoubledVector {
            plus: v.plus.with_values(&self.pp * p + &self.pm * m),
            minus: v.minus.with_values(&self.mp * p + &self.mm * m),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |a: &DMatrix<Complex<T>>, b: &DMatrix<Complex<T>>| complex_mul(a, b);
        Self::new(
            m(&self.pp, &o.pp) + m(&self.pm, &o.mp),
            m(&self.pp, &o.pm) + m(&self.pm, &o.mm),
            m(&self.mp, &o.pp) + m(&self.mm, &o.mp),
            m(&self.mp, &o.pm) + m(&self.mm, &o.mm),
        )
    }

    /// Left multiplication by `Q` without a matrix product.
    pub fn q_mul(&self) -> Self {
        Self::new(self.pp.clone(), self.pm.clone(), -&self.mp, -&self.mm)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.pp - &o.pp, &self.pm - &o.pm, &self.mp - &o.mp, &self.mm - &o.mm)
    }

    /// Largest entry modulus over all four blocks.
    pub fn max_abs(&self) -> T {
        max_abs(&self.pp).max(max_abs(&self.pm)).max(max_abs(&self.mp)).max(max_abs(&self.mm))
    }

    /// `max(‖UQU* − Q‖, ‖U*QU − Q‖)` in the entrywise max-norm.
    pub fn symplectic_defect(&self) -> T {
        let q = Self::q(self.n());
        let adj = self.adjoint();
        let a = self.mul(&adj.q_mul()).sub(&q).max_abs();
        let b = adj.mul(&self.q_mul()).sub(&q).max_abs();
        a.max(b)
    }

    /// `‖CA − AC‖_max`.
    pub fn conjugation_defect(&self) -> T {
        self.conjugated().sub(self).max_abs()
    }
}

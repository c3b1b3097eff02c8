use kgscat_core::linalg::complex_mul;
use kgscat_core::{lattice_dispersion, CMat, CVec, FieldOperators64, LatticeFourier64, LatticeFunction64};

use crate::Direction;

/// `ℱ± = ℱ₀ w±*` as a dense matrix from lattice functions to momentum samples.
#[derive(Clone, Debug)]
pub struct GeneralizedFourier {
    pub direction: Direction,
    matrix: CMat<f64>,
    momenta: Vec<f64>,
    dk: f64,
}

impl GeneralizedFourier {
    pub fn new(fourier: &LatticeFourier64, w: &CMat<f64>, direction: Direction) -> Self {
        Self {
            direction,
            matrix: complex_mul(fourier.forward_matrix(), &w.adjoint()),
            momenta: fourier.momenta().to_vec(),
            dk: fourier.dk(),
        }
    }

    pub fn matrix(&self) -> &CMat<f64> {
        &self.matrix
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    pub fn apply(&self, f: &LatticeFunction64) -> CVec<f64> {
        &self.matrix * f.values()
    }

    /// `(Σ|û|²Δk)^{1/2}`.
    pub fn momentum_norm(&self, u: &CVec<f64>) -> f64 {
        (u.norm_squared() * self.dk).sqrt()
    }

    /// `|‖ℱf‖ − ‖f‖| / ‖f‖`.
    pub fn parseval_defect(&self, f: &LatticeFunction64) -> f64 {
        (self.momentum_norm(&self.apply(f)) - f.norm()).abs() / f.norm()
    }

    /// `‖ℱ(ωf) − ε(k)ℱf‖ / ‖f‖` with the lattice dispersion `ε`.
    pub fn intertwining_residual(&self, ops: &FieldOperators64, f: &LatticeFunction64) -> f64 {
        let lhs = &self.matrix * ops.omega().apply(f.values());
        let mut rhs = self.apply(f);
        let (a, m) = (ops.grid().spacing(), ops.mass());
        for (z, &k) in rhs.iter_mut().zip(self.momenta.iter()) {
            *z *= lattice_dispersion(k, a, m);
        }
        self.momentum_norm(&(lhs - rhs)) / f.norm()
    }
}

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::{build_hamiltonian, build_laplacian, CoreError, Grid, PotentialSpec, Real, SymOperator};

/// `h₀`, `h`, `ω₀ = √(h₀+m²)`, `ω = √(h+m²)` on one grid, with the
/// half-integer powers that the block formulas use cached on first access.
#[derive(Debug)]
pub struct FieldOperators<T: Real> {
    grid: Grid<T>,
    mass: T,
    potential: DVector<T>,
    h0: SymOperator<T>,
    h: SymOperator<T>,
    omega0: SymOperator<T>,
    omega: SymOperator<T>,
    cache: Powers<T>,
}

#[derive(Debug)]
struct Powers<T: Real> {
    omega0_half: OnceLock<DMatrix<T>>,
    omega0_mhalf: OnceLock<DMatrix<T>>,
    omega_half: OnceLock<DMatrix<T>>,
    omega_mhalf: OnceLock<DMatrix<T>>,
}

impl<T: Real> FieldOperators<T> {
    pub fn new(grid: Grid<T>, potential: &PotentialSpec<T>, mass: T) -> Result<Self, CoreError> {
        if !(mass > T::zero()) {
            return Err(CoreError::InvalidParameter(format!("mass {mass} must be positive")));
        }
        let v = potential.samples(&grid)?;
        let h0 = build_laplacian(&grid);
        let h = build_hamiltonian(&grid, potential)?;
        let m2 = mass * mass;
        let sqrt_shift = |s: T| (s + m2).sqrt();
        let omega0 = h0.function(sqrt_shift)?;
        let omega = h.function(sqrt_shift)?;
        Ok(Self {
            grid,
            mass,
            potential: DVector::from_vec(v),
            h0,
            h,
            omega0,
            omega,
            cache: Powers {
                omega0_half: OnceLock::new(),
                omega0_mhalf: OnceLock::new(),
                omega_half: OnceLock::new(),
                omega_mhalf: OnceLock::new(),
            },
        })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn potential(&self) -> &DVector<T> {
        &self.potential
    }

    pub fn has_potential(&self) -> bool {
        self.potential.iter().any(|&v| v != T::zero())
    }

    pub fn h0(&self) -> &SymOperator<T> {
        &self.h0
    }

    pub fn h(&self) -> &SymOperator<T> {
        &self.h
    }

    pub fn omega0(&self) -> &SymOperator<T> {
        &self.omega0
    }

    pub fn omega(&self) -> &SymOperator<T> {
        &self.omega
    }

    /// `ω₀^p` as a real matrix.
    pub fn omega0_pow(&self, p: T) -> DMatrix<T> {
        self.omega0.function_matrix(|e| e.powf(p))
    }

    /// `ω^p` as a real matrix.
    pub fn omega_pow(&self, p: T) -> DMatrix<T> {
        self.omega.function_matrix(|e| e.powf(p))
    }

    pub fn omega0_half(&self) -> &DMatrix<T> {
        self.cache.omega0_half.get_or_init(|| self.omega0.function_matrix(|e| e.sqrt()))
    }

    pub fn omega0_mhalf(&self) -> &DMatrix<T> {
        self.cache.omega0_mhalf.get_or_init(|| self.omega0.function_matrix(|e| T::one() / e.sqrt()))
    }

    pub fn omega_half(&self) -> &DMatrix<T> {
        self.cache.omega_half.get_or_init(|| self.omega.function_matrix(|e| e.sqrt()))
    }

    pub fn omega_mhalf(&self) -> &DMatrix<T> {
        self.cache.omega_mhalf.get_or_init(|| self.omega.function_matrix(|e| T::one() / e.sqrt()))
    }
}

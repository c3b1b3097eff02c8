//! Lattice operator calculus for the Klein-Gordon scattering toolkit.
//!
//! Everything here is generic over the scalar type through [`Real`]; the
//! aliases at the bottom pin the common `f64` (and `f32`) instantiations.

mod error;
mod field;
mod fourier;
mod fractional;
mod grid;
mod hs;
pub mod linalg;
mod operator;
mod potential;
mod scalar;

pub use error::CoreError;
pub use field::FieldOperators;
pub use fourier::{lattice_dispersion, LatticeFourier};
pub use fractional::{fractional_power_apply, fractional_power_matrix, BalakrishnanQuadrature, FractionalPower};
pub use grid::{Boundary, Grid, LatticeFunction};
pub use hs::{hs_diagnostics, hs_norm, hs_norm_real, operator_norm, HsDiagnostics, HS_QUANTITIES};
pub use operator::{build_hamiltonian, build_laplacian, Spectrum, SymOperator};
pub use potential::PotentialSpec;
pub use scalar::{lit, Real};

/// Complex scalar over [`Real`].
pub type C<T> = num_complex::Complex<T>;
/// Complex column vector.
pub type CVec<T> = nalgebra::DVector<num_complex::Complex<T>>;
/// Complex dense matrix.
pub type CMat<T> = nalgebra::DMatrix<num_complex::Complex<T>>;
/// Real dense matrix.
pub type RMat<T> = nalgebra::DMatrix<T>;

pub type Grid64 = Grid<f64>;
pub type Grid32 = Grid<f32>;
pub type LatticeFunction64 = LatticeFunction<f64>;
pub type SymOperator64 = SymOperator<f64>;
pub type SymOperator32 = SymOperator<f32>;
pub type FieldOperators64 = FieldOperators<f64>;
pub type PotentialSpec64 = PotentialSpec<f64>;
pub type LatticeFourier64 = LatticeFourier<f64>;

//! Vacuum expectation values of the outgoing field in the incoming vacuum:
//! the response `F(t, f)`, the derived functionals `X, Y, Z±, Z[f, g], Z[f]`,
//! and the momentum-space datum `z(k)` both as the `λ → 0` limit of `z_λ` and
//! in closed form.

mod chi;
mod conventions;
mod data;
mod error;
mod zlimit;

pub use chi::CutoffChi;
pub use conventions::{Conventions, CONVENTIONS};
pub use data::{DualPathEntry, VacuumData, Xyz};
pub use error::VacuumError;
pub use zlimit::{band_indices, reflection_index, relative_l2, lambdas_to_saturation, select, ZLimit, DEFAULT_LAMBDAS};

//! Truncated bosonic Fock space over `ℂᵈ`: creation and annihilation
//! operators, Segal fields, the doubled-space field `ψ(v)`, second
//! quantisation `Γ`/`dΓ`, coherent states and the Shale criterion, all at a
//! scale where every identity can be checked exactly.

mod error;
mod second;
mod shale;
mod space;
mod state;
mod suite;
mod weyl;

pub use error::FockError;
pub use second::{exp_i, operator_matrix};
pub use shale::{shale_check, ShaleReport};
pub use space::{FockSpace, MAX_MODES, MAX_PARTICLES};
pub use state::FockState;
pub use suite::{identity_suite, IdentityRow, Sampler};
pub use weyl::{coherent_state, displacement_check, psi_matrix, DisplacementReport};

pub type FockState64 = FockState<f64>;
pub type FockState32 = FockState<f32>;

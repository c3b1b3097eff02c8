//! Time evolution on the lattice: propagators, the classical Klein-Gordon flow with a
//! separable source, the symplectic blocks `U(t)`, `U₀(t)` and the source orbit `g_t`.

mod blocks;
mod doubled;
mod error;
mod flow;
mod quadrature;
mod source;

pub use blocks::{build_u0_blocks, build_u_blocks, source_orbit, SourceOrbit};
pub use doubled::{BlockOperator, DoubledVector};
pub use error::DynamicsError;
pub use flow::{classical_flow, duhamel_integrals, propagator, Duhamel, FlowState};
pub use quadrature::{Integral, QuadratureSpec, VectorQuadrature};
pub use source::{SourceSpec, TemporalProfile};

pub type DoubledVector64 = DoubledVector<f64>;
pub type BlockOperator64 = BlockOperator<f64>;
pub type SourceSpec64 = SourceSpec<f64>;
pub type TemporalProfile64 = TemporalProfile<f64>;
pub type VectorQuadrature64 = VectorQuadrature<f64>;

//! Inverse problems for the vacuum datum `z(k) = κ ĵ(ε) ε^{-1/2} (ℱ₊ρ)(k)`:
//! recover `ρ` given `j`, recover `j` given `ρ` (band quotient plus Taylor
//! continuation across the mass gap), and a harness that checks that
//! different inputs give measurably different scattering data.

mod band;
mod continuation;
mod distinguish;
mod error;
mod jrec;
mod rho;
mod sampling;

pub use band::{chebyshev_nodes, fit_half_width, AnalyticBand, TaylorSeries};
pub use continuation::{round_trip, taylor_continue, Continuation, ContinuationOptions, ContinuationStep};
pub use distinguish::{
    band_s_distance, band_z_distance, converged_band, distinguishability_harness, Case, DistinguishReport, FLOOR_SHRINK,
};
pub use error::InverseError;
pub use jrec::{inverse_transform, reconstruct_j, JOptions, JReconstruction};
pub use rho::{reconstruct_rho, RhoOptions, RhoReconstruction};
pub use sampling::{dispersion, fourier_at, lattice_momentum, sample_z, temporal_transform, transform_at, ZSamples};

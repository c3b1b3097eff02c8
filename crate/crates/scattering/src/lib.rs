//! One-particle scattering data on the lattice: wave operators `w±`, `S = w₊*w₋`,
//! the asymptotic Bogoliubov blocks `W±`, source asymptotics `g±`, `g_∞`, the
//! generalized Fourier transforms `ℱ± = ℱ₀w±*`, and cross-checks against
//! stationary scattering.

mod blocks;
mod context;
mod diagnostics;
mod error;
mod fourier;
mod oracle;
mod packets;
mod source;
mod wave;

pub use blocks::{
    build_w_blocks, dynamic_w_limit, s_intertwining_difference, s_intertwining_residual, w_blocks_with, i_abc_apply, i_abc_limits, Exponents,
    IabcReport, IdentityResidual,
};
pub use context::{ConvergenceLog, ScatteringConfig, ScatteringContext, SourceAsymptotics};
pub use diagnostics::DiagnosticRow;
pub use error::ScatteringError;
pub use fourier::GeneralizedFourier;
pub use oracle::{dispersion_on_momenta, geometric_decay, riemann_lebesgue, transfer_comparison, transfer_matrix, TransferComparison};
pub use packets::{
    band_packets, gaussian_packet, group_velocity, kinematic_center, origin_packets, riemann_lebesgue_packet, BandSpec,
    Direction, Packet,
};
pub use source::{
    full_line_transform, g_infinity, g_infinity_direct, g_pm, half_line_transform, GInfinity, PROFILE_CUTOFF,
    TAIL_TOLERANCE,
};
pub use wave::{
    cook_integrand, interaction_picture, invariance_principle_check, klein_gordon_wave_matrix, s_matrix,
    s_matrix_checks, schrodinger_wave_matrix, wave_operator, InvarianceReport, PacketResidual, SChecks, WaveOperator,
};

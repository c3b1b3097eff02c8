use kgscat_core::{CVec, Grid64, LatticeFunction64};
use kgscat_dynamics::{TemporalProfile64, VectorQuadrature64};
use kgscat_scattering::ScatteringContext;
use kgscat_vacuum::CONVENTIONS;
use num_complex::Complex;

use crate::{dispersion, temporal_transform, InverseError, ZSamples};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhoOptions {
    /// `ĵ(ε(k))` below this fraction of its maximum is treated as a zero.
    pub mask_threshold: f64,
    /// Band `|k| ≤ k_max` on which degeneracy is judged.
    pub band_k_max: f64,
    pub max_masked_fraction: f64,
    /// Masked runs shorter than this many cells are bridged by a cubic.
    pub max_fill_gap: usize,
}

impl Default for RhoOptions {
    fn default() -> Self {
        Self { mask_threshold: 1e-8, band_k_max: 3.0, max_masked_fraction: 0.2, max_fill_gap: 5 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoReconstruction {
    pub rho: LatticeFunction64,
    /// The quotient `z/(κ ĵ(ε) ε^{p})` on the lattice momenta, i.e. the recovered `ℱ₊ρ`.
    pub transform: CVec<f64>,
    pub momenta: Vec<f64>,
    /// Lattice-momentum indices.
    pub masked: Vec<usize>,
    pub filled: Vec<usize>,
    pub unrecoverable: Vec<usize>,
}

impl RhoReconstruction {
    /// `‖ρ_rec − ρ‖ / ‖ρ‖` on the lattice.
    pub fn relative_error(&self, truth: &LatticeFunction64) -> f64 {
        let d = (self.rho.values() - truth.values()).norm();
        let s = truth.values().norm();
        if s > 0.0 {
            d / s
        } else {
            d
        }
    }

    /// `‖(q − ℱ₊ρ)|_unmasked‖ / ‖ℱ₊ρ‖`: masked points carry no data so they are left out.
    pub fn unmasked_error(&self, truth_transform: &CVec<f64>) -> f64 {
        let skip: std::collections::HashSet<usize> = self.masked.iter().copied().collect();
        let d: f64 = (0..self.transform.len())
            .filter(|i| !skip.contains(i))
            .map(|i| (self.transform[i] - truth_transform[i]).norm_sqr())
            .sum();
        let s = truth_transform.norm();
        if s > 0.0 {
            d.sqrt() / s
        } else {
            d.sqrt()
        }
    }
}

/// `ρ` from `z` and a known `j`: quotient on the lattice momenta, then `w₊ℱ₀⁻¹`.
pub fn reconstruct_rho(
    z: &ZSamples,
    profile: &TemporalProfile64,
    grid: &Grid64,
    mass: f64,
    context: &ScatteringContext,
    quad: &VectorQuadrature64,
    options: &RhoOptions,
) -> Result<RhoReconstruction, InverseError> {
    let zv = z.on_lattice(grid)?;
    let momenta = grid.momenta();
    let n = momenta.len();
    let eps: Vec<f64> = momenta.iter().map(|&k| dispersion(grid, mass, k)).collect();
    let jh = temporal_transform(profile, &eps, quad)?;
    let peak = jh.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let masked_flag: Vec<bool> = jh.iter().map(|v| !(v.norm() >= options.mask_threshold * peak) || peak == 0.0).collect();

    let in_band: Vec<usize> = (0..n).filter(|&i| momenta[i].abs() <= options.band_k_max + 1e-12).collect();
    let band_masked = in_band.iter().filter(|&&i| masked_flag[i]).count();
    if band_masked as f64 > options.max_masked_fraction * in_band.len() as f64 {
        return Err(InverseError::SpectrallyDegenerate { masked: band_masked, total: in_band.len() });
    }

    let mut q = CVec::<f64>::zeros(n);
    for i in 0..n {
        if !masked_flag[i] {
            q[i] = zv[i] / (jh[i] * CONVENTIONS.weight(eps[i]));
        }
    }

    let (mut filled, mut unrecoverable) = (vec![], vec![]);
    let mut i = 0;
    while i < n {
        if !masked_flag[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && masked_flag[i] {
            i += 1;
        }
        let run: Vec<usize> = (start..i).collect();
        let bounded = start > 0 && i < n;
        if bounded && run.len() < options.max_fill_gap {
            let nodes: Vec<usize> = [start.wrapping_sub(2), start - 1, i, i + 1]
                .into_iter()
                .filter(|&j| j < n && !masked_flag[j])
                .collect();
            for &j in &run {
                q[j] = lagrange(&nodes.iter().map(|&p| (momenta[p], q[p])).collect::<Vec<_>>(), momenta[j]);
            }
            filled.extend(run);
        } else {
            unrecoverable.extend(run);
        }
    }

    let pulled = context.fourier.inverse(&q);
    let w = &context.wave(CONVENTIONS.transform).matrix;
    let rho = LatticeFunction64::new(grid, w * pulled).expect("grid-sized");
    let masked = (0..n).filter(|&i| masked_flag[i]).collect();
    Ok(RhoReconstruction { rho, transform: q, momenta, masked, filled, unrecoverable })
}

fn lagrange(nodes: &[(f64, Complex<f64>)], x: f64) -> Complex<f64> {
    let mut out = Complex::new(0.0, 0.0);
    for (i, &(xi, yi)) in nodes.iter().enumerate() {
        let mut l = 1.0;
        for (j, &(xj, _)) in nodes.iter().enumerate() {
            if i != j {
                l *= (x - xj) / (xi - xj);
            }
        }
        out += yi * l;
    }
    out
}

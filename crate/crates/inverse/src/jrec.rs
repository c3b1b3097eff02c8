use kgscat_core::{Grid64, LatticeFunction64};
use kgscat_scattering::ScatteringContext;
use kgscat_vacuum::CONVENTIONS;
use num_complex::Complex;

use crate::{
    chebyshev_nodes, dispersion, fit_half_width, fourier_at, lattice_momentum, taylor_continue, transform_at, AnalyticBand,
    ContinuationOptions, ContinuationStep, InverseError, ZSamples,
};

#[derive(Clone, Debug, PartialEq)]
pub struct JOptions {
    /// Radius parameter: the series at every center converges on a disc of radius `δ`.
    pub delta: f64,
    pub continuation: ContinuationOptions,
    pub band_k_max: f64,
    /// `|ℱ₊ρ(k)|` below this fraction of its maximum is masked.
    pub mask_threshold: f64,
    /// Points of the continuation grid on `[0, m)`.
    pub gap_points: usize,
    /// Chebyshev nodes requested in the fit window.
    pub fit_nodes: usize,
    /// Times at which `j(t)` is synthesised.
    pub times: Vec<f64>,
}

impl JOptions {
    pub fn new(delta: f64) -> Self {
        Self {
            delta,
            continuation: ContinuationOptions::default(),
            band_k_max: 3.0,
            mask_threshold: 1e-8,
            gap_points: 40,
            fit_nodes: 25,
            times: (0..=120).map(|i| -6.0 + 0.1 * i as f64).collect(),
        }
    }

    /// Lattice band momenta plus `±k(τ)` at the Chebyshev nodes of the first fit window.
    pub fn band_momenta(&self, grid: &Grid64, mass: f64) -> Vec<f64> {
        let band: Vec<f64> = grid.momenta().into_iter().filter(|k| k.abs() <= self.band_k_max + 1e-12).collect();
        let k_top = band.iter().fold(0.0f64, |a, k| a.max(k.abs()));
        let (lo, hi) = (mass, dispersion(grid, mass, k_top));
        let w = fit_half_width(lo, hi, self.delta);
        let mut out = band;
        for tau in chebyshev_nodes(lo + w, w, self.fit_nodes) {
            if let Some(k) = lattice_momentum(tau, grid.spacing(), mass) {
                out.push(k);
                out.push(-k);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JReconstruction {
    /// Increasing `τ` on `[−τ_max, τ_max]`.
    pub tau: Vec<f64>,
    pub j_hat: Vec<Complex<f64>>,
    pub times: Vec<f64>,
    pub j: Vec<Complex<f64>>,
    /// Step I momentum: the band maximiser of `|ℱ₊ρ|`.
    pub anchor: f64,
    /// Momenta dropped because `ℱ₊ρ` vanishes there.
    pub masked: Vec<f64>,
    pub band: (f64, f64),
    pub steps: Vec<ContinuationStep>,
    pub fit_order: usize,
}

impl JReconstruction {
    /// `sup |ĵ_rec − ĵ| / sup |ĵ|` over `τ ∈ [0, τ_max]`.
    pub fn sup_error(&self, truth: impl Fn(f64) -> Complex<f64>) -> f64 {
        let (mut d, mut s) = (0.0f64, 0.0f64);
        for (&t, &v) in self.tau.iter().zip(self.j_hat.iter()) {
            if t >= 0.0 {
                let e = truth(t);
                d = d.max((v - e).norm());
                s = s.max(e.norm());
            }
        }
        if s > 0.0 {
            d / s
        } else {
            d
        }
    }

    /// Steps whose span meets `[0, m)`.
    pub fn gap_steps(&self) -> usize {
        let m = self.band.0;
        self.steps.iter().filter(|s| s.next < m && s.center > 0.0).count()
    }
}

/// `ĵ` and `j` from `z` and a known `ρ`: band quotient, reality extension,
/// Taylor continuation across `(−m, m)`, inverse transform.
pub fn reconstruct_j(
    z: &ZSamples,
    rho: &LatticeFunction64,
    grid: &Grid64,
    mass: f64,
    context: &ScatteringContext,
    options: &JOptions,
) -> Result<JReconstruction, InverseError> {
    // κ ε^{p} is divided out on the lattice, where ω₀ is diagonal; what is left,
    // ĵ(ω₀)ρ, is localised, so its trigonometric interpolant is accurate between
    // the lattice momenta.
    let zv = z.on_lattice(grid)?;
    let lattice = grid.momenta();
    let reduced = zv
        .iter()
        .zip(lattice.iter())
        .map(|(v, &k)| v / CONVENTIONS.weight(dispersion(grid, mass, k)))
        .collect::<Vec<_>>();
    let numerator = rho.with_values(context.fourier.inverse(&nalgebra::DVector::from_vec(reduced)));
    let ks = options.band_momenta(grid, mass);
    let f = transform_at(grid, context, rho, &ks);
    let (anchor, peak) = ks
        .iter()
        .zip(f.iter())
        .map(|(&k, v)| (k, v.norm()))
        .fold((f64::NAN, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let floor = 1e-14 * rho.norm().max(f64::MIN_POSITIVE);
    if !(peak > floor) {
        return Err(InverseError::NoAnchor { threshold: floor });
    }

    // (τ, Σ conj(ℱ₊ρ)·num, Σ |ℱ₊ρ|²), merged over ±k
    let mut rows: Vec<(f64, Complex<f64>, f64)> = vec![];
    let mut masked = vec![];
    for (i, &k) in ks.iter().enumerate() {
        if f[i].norm() < options.mask_threshold * peak {
            masked.push(k);
            continue;
        }
        let num = fourier_at(grid, &numerator, k);
        rows.push((dispersion(grid, mass, k), f[i].conj() * num, f[i].norm_sqr()));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, Complex<f64>, f64)> = vec![];
    for r in rows {
        match merged.last_mut() {
            Some(last) if (r.0 - last.0).abs() <= 1e-10 => {
                last.1 += r.1;
                last.2 += r.2;
            }
            _ => merged.push(r),
        }
    }
    let band_tau: Vec<f64> = merged.iter().map(|r| r.0).collect();
    let band_val: Vec<Complex<f64>> = merged.iter().map(|r| r.1 / r.2).collect();
    let band = AnalyticBand::new(band_tau.clone(), band_val.clone(), options.delta)?;
    let lo = band.lo();

    let targets: Vec<f64> = (0..options.gap_points).map(|i| lo * i as f64 / options.gap_points as f64).collect();
    let cont = taylor_continue(&band, &targets, &options.continuation)?;

    let mut positive: Vec<(f64, Complex<f64>)> = cont.taus.iter().copied().zip(cont.values.iter().copied()).collect();
    positive.extend(band_tau.iter().copied().zip(band_val.iter().copied()));
    positive.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut full: Vec<(f64, Complex<f64>)> =
        positive.iter().rev().filter(|p| p.0 > 0.0).map(|&(t, v)| (-t, v.conj())).collect();
    full.extend(positive.iter().copied());

    let tau: Vec<f64> = full.iter().map(|p| p.0).collect();
    let j_hat: Vec<Complex<f64>> = full.iter().map(|p| p.1).collect();
    let j = options.times.iter().map(|&t| inverse_transform(&tau, &j_hat, t)).collect();
    Ok(JReconstruction {
        tau,
        j_hat,
        times: options.times.clone(),
        j,
        anchor,
        masked,
        band: (lo, band.hi()),
        steps: cont.steps,
        fit_order: cont.fit_orders.first().copied().unwrap_or(0),
    })
}

/// `(2π)^{-1/2} ∫ e^{iτt} ĵ(τ) dτ` by the trapezoid rule on the given nodes.
pub fn inverse_transform(tau: &[f64], j_hat: &[Complex<f64>], t: f64) -> Complex<f64> {
    let g = |i: usize| Complex::from_polar(1.0, tau[i] * t) * j_hat[i];
    let s: Complex<f64> = (1..tau.len()).map(|i| (g(i) + g(i - 1)) * (0.5 * (tau[i] - tau[i - 1]))).sum();
    s / std::f64::consts::TAU.sqrt()
}

use kgscat_core::{lattice_dispersion, Grid64, LatticeFunction64};
use kgscat_dynamics::{TemporalProfile64, VectorQuadrature64};
use kgscat_scattering::ScatteringContext;
use kgscat_vacuum::{VacuumData, CONVENTIONS};
use nalgebra::DVector;
use num_complex::Complex;

use crate::InverseError;

/// Momentum samples of `z`; order is irrelevant, lookups match `k` to `1e-9`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZSamples {
    pub momenta: Vec<f64>,
    pub values: Vec<Complex<f64>>,
}

const MATCH: f64 = 1e-9;

impl ZSamples {
    pub fn new(momenta: Vec<f64>, values: Vec<Complex<f64>>) -> Result<Self, InverseError> {
        if momenta.len() != values.len() {
            return Err(InverseError::InvalidParameter(format!(
                "{} momenta but {} values",
                momenta.len(),
                values.len()
            )));
        }
        Ok(Self { momenta, values })
    }

    pub fn len(&self) -> usize {
        self.momenta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.momenta.is_empty()
    }

    pub fn get(&self, k: f64) -> Option<Complex<f64>> {
        self.momenta.iter().position(|&q| (q - k).abs() <= MATCH).map(|i| self.values[i])
    }

    pub fn scaled(&self, c: Complex<f64>) -> Self {
        Self { momenta: self.momenta.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Samples on the lattice momenta, in grid order.
    pub fn on_lattice(&self, grid: &Grid64) -> Result<DVector<Complex<f64>>, InverseError> {
        let k = grid.momenta();
        let mut out = DVector::zeros(k.len());
        for (i, &q) in k.iter().enumerate() {
            out[i] = self.get(q).ok_or(InverseError::MissingSample { k: q })?;
        }
        Ok(out)
    }
}

/// `(2π)^{-1/2} Σ a e^{-ikx} f(x)` at an arbitrary `k`; on the lattice momenta
/// this is the grid transform.
pub fn fourier_at(grid: &Grid64, f: &LatticeFunction64, k: f64) -> Complex<f64> {
    let c = grid.spacing() / std::f64::consts::TAU.sqrt();
    grid.points()
        .iter()
        .zip(f.values().iter())
        .map(|(&x, v)| Complex::from_polar(1.0, -k * x) * v)
        .sum::<Complex<f64>>()
        * c
}

/// `k ≥ 0` with `ε(k) = τ`, or `None` outside `[m, ε(π/a)]`.
pub fn lattice_momentum(tau: f64, spacing: f64, mass: f64) -> Option<f64> {
    let s = (tau * tau - mass * mass).max(0.0).sqrt() * spacing * 0.5;
    if tau < mass - 1e-12 || s > 1.0 + 1e-12 {
        return None;
    }
    Some(2.0 / spacing * s.min(1.0).asin())
}

/// `(ℱ₊ρ)(k) = ℱ₀(w₊*ρ)(k)` at arbitrary momenta.
pub fn transform_at(
    grid: &Grid64,
    context: &ScatteringContext,
    rho: &LatticeFunction64,
    momenta: &[f64],
) -> Vec<Complex<f64>> {
    let pulled = rho.with_values(context.wave(CONVENTIONS.transform).matrix.adjoint() * rho.values());
    momenta.iter().map(|&k| fourier_at(grid, &pulled, k)).collect()
}

/// The closed-form `z(k) = −√2 ℱ₀[conj(w₋*g_∞)](k)` at arbitrary momenta.
pub fn sample_z(data: &VacuumData, momenta: &[f64]) -> ZSamples {
    let g = data.g_infinity_direct();
    let pulled = g.with_values(data.context.w_minus.matrix.adjoint() * g.values()).conj();
    let c = CONVENTIONS.lambda_prefactor * CONVENTIONS.kappa;
    let values = momenta.iter().map(|&k| fourier_at(data.grid(), &pulled, k) * c).collect();
    ZSamples { momenta: momenta.to_vec(), values }
}

/// `ĵ(τ) = (2π)^{-1/2}∫ e^{-iτt} j(t) dt`, closed form when there is one.
pub fn temporal_transform(
    profile: &TemporalProfile64,
    taus: &[f64],
    quad: &VectorQuadrature64,
) -> Result<Vec<Complex<f64>>, InverseError> {
    if let Some(v) = taus.iter().map(|&t| profile.fourier(t)).collect::<Option<Vec<_>>>() {
        return Ok(v.into_iter().map(Complex::from).collect());
    }
    let (lo, hi) = profile.support(kgscat_scattering::PROFILE_CUTOFF);
    let f = |t: f64| {
        let j = profile.eval(t);
        DVector::from_iterator(taus.len(), taus.iter().map(|&tau| Complex::from_polar(j, -tau * t)))
    };
    let r = quad.integrate(f, lo, hi, &profile.breakpoints())?;
    let c = 1.0 / std::f64::consts::TAU.sqrt();
    Ok(r.value.iter().map(|v| v * c).collect())
}

/// `ε(k)` on the lattice of `grid`.
pub fn dispersion(grid: &Grid64, mass: f64, k: f64) -> f64 {
    lattice_dispersion(k, grid.spacing(), mass)
}

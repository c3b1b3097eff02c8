use kgscat_core::{CVec, LatticeFunction64};
use num_complex::Complex;
use rayon::prelude::*;

use crate::{CutoffChi, VacuumData, VacuumError, CONVENTIONS};

/// Dyadic cutoff scales.
pub const DEFAULT_LAMBDAS: [f64; 4] = [0.5, 0.25, 0.125, 0.0625];

/// [`DEFAULT_LAMBDAS`] closed by `1/L`: on a ring of half-width `L` the cutoff
/// is identically one from there on, so the sequence is stationary below it.
pub fn lambdas_to_saturation(half_width: f64) -> Vec<f64> {
    let sat = 1.0 / half_width;
    let mut out: Vec<f64> = DEFAULT_LAMBDAS.iter().copied().filter(|&l| l > sat * (1.0 + 1e-12)).collect();
    out.push(sat);
    out
}

/// The sequence `z_λ` on a set of momenta and its extrapolated limit.
#[derive(Clone, Debug)]
pub struct ZLimit {
    pub lambdas: Vec<f64>,
    pub momenta: Vec<f64>,
    pub samples: Vec<CVec<f64>>,
    /// `‖z_{λᵢ₊₁} − z_{λᵢ}‖` in the momentum `L²` norm.
    pub cauchy: Vec<f64>,
    /// Contraction ratio of the last two Cauchy differences.
    pub rate: f64,
    /// Richardson-type limit assuming geometric convergence at `rate`.
    pub extrapolated: CVec<f64>,
}

impl ZLimit {
    pub fn last(&self) -> &CVec<f64> {
        self.samples.last().expect("at least three scales")
    }
}

/// Indices of the lattice momenta with `|k| ≤ k_max`.
pub fn band_indices(momenta: &[f64], k_max: f64) -> Vec<usize> {
    (0..momenta.len()).filter(|&i| momenta[i].abs() <= k_max + 1e-12).collect()
}

pub fn select(v: &CVec<f64>, idx: &[usize]) -> CVec<f64> {
    CVec::from_iterator(idx.len(), idx.iter().map(|&i| v[i]))
}

/// `‖a − b‖ / ‖b‖` (the plain difference when `b` vanishes).
pub fn relative_l2(a: &CVec<f64>, b: &CVec<f64>) -> f64 {
    let d = (a - b).norm();
    let s = b.norm();
    if s > 0.0 {
        d / s
    } else {
        d
    }
}

/// Index of `−k` for the momentum ordering `k_j = (j − n/2)Δk`; `−n/2` pairs with itself.
pub fn reflection_index(j: usize, n: usize) -> usize {
    (n - j) % n
}

impl VacuumData {
    /// `z_λ(k) = −√2(2π)^{-1/2} Z[χ_k^λ]`, `χ_k^λ(x) = e^{−ikx}χ(λx)`, with `Z` taken through `F`.
    pub fn z_lambda(&self, chi: CutoffChi, momenta: &[f64]) -> CVec<f64> {
        let grid = self.grid();
        let vals: Vec<Complex<f64>> = momenta
            .par_iter()
            .map(|&k| {
                let f = LatticeFunction64::from_complex(grid, |x| Complex::from_polar(chi.eval(x), -k * x));
                self.z_chain(&f) * CONVENTIONS.lambda_prefactor
            })
            .collect();
        CVec::from_vec(vals)
    }

    pub fn z_limit(&self, lambdas: &[f64], momenta: &[f64]) -> Result<ZLimit, VacuumError> {
        if lambdas.len() < 3 {
            return Err(VacuumError::InvalidLambda(format!("need at least three scales, got {}", lambdas.len())));
        }
        if lambdas.iter().any(|&l| !(l > 0.0)) || lambdas.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(VacuumError::InvalidLambda(format!("{lambdas:?} is not a positive decreasing sequence")));
        }
        let dk = self.context.fourier.dk();
        let samples: Vec<_> = lambdas.iter().map(|&l| self.z_lambda(CutoffChi::new(l), momenta)).collect();
        let cauchy: Vec<f64> = samples.windows(2).map(|w| (&w[1] - &w[0]).norm() * dk.sqrt()).collect();
        for (i, w) in cauchy.windows(2).enumerate() {
            if !(w[1] < w[0]) {
                return Err(VacuumError::NotCauchy { step: i + 1, previous: w[0], current: w[1] });
            }
        }
        let n = cauchy.len();
        let rate = cauchy[n - 1] / cauchy[n - 2];
        let step = &samples[n] - &samples[n - 1];
        let extrapolated = &samples[n] + step * Complex::from(rate / (1.0 - rate));
        Ok(ZLimit { lambdas: lambdas.to_vec(), momenta: momenta.to_vec(), samples, cauchy, rate, extrapolated })
    }
}

use kgscat_core::linalg::{complex_mul, from_parts, real_mul_vec};
use kgscat_core::{CMat, CVec, FieldOperators64, LatticeFunction64, SymOperator64};
use nalgebra::DMatrix;
use num_complex::Complex;
use rayon::prelude::*;

use crate::{Direction, Packet, ScatteringError};

/// `e^{itB}e^{-itA}` for symmetric `A`, `B`, through both eigenbases:
/// `Q_B (M ∘ e^{it(b_i - a_j)}) Q_Aᵀ` with `M = Q_Bᵀ Q_A`. Exactly unitary.
pub fn interaction_picture(b: &SymOperator64, a: &SymOperator64, t: f64) -> CMat<f64> {
    let (sb, sa) = (b.spectrum(), a.spectrum());
    let m = sb.vectors.transpose() * &sa.vectors;
    let n = m.nrows();
    let mut re = DMatrix::zeros(n, n);
    let mut im = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let ph = t * (sb.values[i] - sa.values[j]);
            re[(i, j)] = m[(i, j)] * ph.cos();
            im[(i, j)] = m[(i, j)] * ph.sin();
        }
    }
    let qa_t = sa.vectors.transpose();
    from_parts(&(&sb.vectors * re * &qa_t), &(&sb.vectors * im * &qa_t))
}

/// `e^{itω}e^{-itω₀}`.
pub fn klein_gordon_wave_matrix(ops: &FieldOperators64, t: f64) -> CMat<f64> {
    interaction_picture(ops.omega(), ops.omega0(), t)
}

/// `e^{ith}e^{-ith₀}`.
pub fn schrodinger_wave_matrix(ops: &FieldOperators64, t: f64) -> CMat<f64> {
    interaction_picture(ops.h(), ops.h0(), t)
}

fn weighted_norm(ops: &FieldOperators64, v: &CVec<f64>) -> f64 {
    ops.grid().norm(v)
}

/// Per-packet convergence record of a wave operator.
#[derive(Clone, Debug, PartialEq)]
pub struct PacketResidual {
    pub k0: f64,
    pub center: f64,
    /// `‖W(T)f − W(T/2)f‖`.
    pub cook: f64,
    /// `‖(ω w − w ω₀) f‖`.
    pub intertwining: f64,
    /// `‖w f‖ − 1`.
    pub isometry: f64,
}

/// `w± ≈ e^{±iTω}e^{∓iTω₀}` at `T = t_max`, with its convergence log.
#[derive(Clone, Debug)]
pub struct WaveOperator {
    pub direction: Direction,
    pub t_max: f64,
    pub matrix: CMat<f64>,
    pub log: Vec<PacketResidual>,
}

impl WaveOperator {
    pub fn worst_cook(&self) -> f64 {
        self.log.iter().map(|r| r.cook).fold(0.0, f64::max)
    }

    pub fn worst_intertwining(&self) -> f64 {
        self.log.iter().map(|r| r.intertwining).fold(0.0, f64::max)
    }

    /// First packet whose Cook residual exceeds `threshold`, as an error.
    pub fn check(&self, threshold: f64) -> Result<(), ScatteringError> {
        match self.log.iter().find(|r| !(r.cook <= threshold)) {
            Some(r) => Err(ScatteringError::NotConverged {
                direction: self.direction.symbol(),
                k0: r.k0,
                residual: r.cook,
                threshold,
            }),
            None => Ok(()),
        }
    }

    pub fn apply(&self, f: &LatticeFunction64) -> LatticeFunction64 {
        f.with_values(&self.matrix * f.values())
    }
}

pub fn wave_operator(ops: &FieldOperators64, direction: Direction, t_max: f64, packets: &[Packet]) -> WaveOperator {
    let s = direction.sign();
    let matrix = klein_gordon_wave_matrix(ops, s * t_max);
    let half = klein_gordon_wave_matrix(ops, s * t_max / 2.0);
    let log = packets
        .par_iter()
        .map(|p| {
            let f = p.f.values();
            let wf = &matrix * f;
            let cook = weighted_norm(ops, &(&wf - &half * f));
            let lhs = ops.omega().apply(&wf);
            let rhs = &matrix * ops.omega0().apply(f);
            let intertwining = weighted_norm(ops, &(lhs - rhs)) / p.f.norm();
            let isometry = weighted_norm(ops, &wf) / p.f.norm() - 1.0;
            PacketResidual { k0: p.k0, center: p.center, cook, intertwining, isometry }
        })
        .collect();
    WaveOperator { direction, t_max, matrix, log }
}

/// `S = w₊* w₋`.
pub fn s_matrix(w_plus: &CMat<f64>, w_minus: &CMat<f64>) -> CMat<f64> {
    complex_mul(&w_plus.adjoint(), w_minus)
}

/// Unitarity and energy conservation of `S` on packets.
#[derive(Clone, Debug, PartialEq)]
pub struct SChecks {
    pub k0: f64,
    /// `|‖Sf‖ − ‖f‖| / ‖f‖`.
    pub unitarity: f64,
    /// `‖(Sω₀ − ω₀S) f‖ / ‖f‖`.
    pub commutator: f64,
}

pub fn s_matrix_checks(ops: &FieldOperators64, s: &CMat<f64>, packets: &[Packet]) -> Vec<SChecks> {
    packets
        .iter()
        .map(|p| {
            let f = p.f.values();
            let nf = p.f.norm();
            let sf = s * f;
            let unitarity = (weighted_norm(ops, &sf) - nf).abs() / nf;
            let c = s * ops.omega0().apply(f) - ops.omega0().apply(&sf);
            SChecks { k0: p.k0, unitarity, commutator: weighted_norm(ops, &c) / nf }
        })
        .collect()
}

/// Residuals of the Schrödinger-picture limit `e^{ith}e^{-ith₀}f` against the
/// Klein-Gordon `w±f`, which the invariance principle says coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub k0: f64,
    pub times: Vec<f64>,
    pub residuals: Vec<f64>,
}

impl InvarianceReport {
    pub fn decreasing(&self) -> bool {
        self.residuals.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn last(&self) -> f64 {
        *self.residuals.last().unwrap_or(&f64::NAN)
    }
}

pub fn invariance_principle_check(
    ops: &FieldOperators64,
    w: &WaveOperator,
    packets: &[Packet],
    times: &[f64],
) -> Vec<InvarianceReport> {
    let s = w.direction.sign();
    let mats: Vec<CMat<f64>> = times.par_iter().map(|&t| schrodinger_wave_matrix(ops, s * t)).collect();
    packets
        .iter()
        .map(|p| {
            let wf = &w.matrix * p.f.values();
            let residuals = mats.iter().map(|m| weighted_norm(ops, &(m * p.f.values() - &wf))).collect();
            InvarianceReport { k0: p.k0, times: times.to_vec(), residuals }
        })
        .collect()
}

/// Cook integrand `‖(ω − ω₀)e^{-itω₀}f‖` at the given times.
pub fn cook_integrand(ops: &FieldOperators64, f: &LatticeFunction64, times: &[f64]) -> Vec<f64> {
    let diff = ops.omega().matrix() - ops.omega0().matrix();
    let s0 = ops.omega0().spectrum();
    let coeff = real_mul_vec(&s0.vectors.transpose(), f.values());
    times
        .iter()
        .map(|&t| {
            let evolved = CVec::from_iterator(
                coeff.len(),
                coeff.iter().zip(s0.values.iter()).map(|(c, &e)| c * Complex::new((t * e).cos(), -(t * e).sin())),
            );
            let g = real_mul_vec(&s0.vectors, &evolved);
            weighted_norm(ops, &real_mul_vec(&diff, &g))
        })
        .collect()
}

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::InverseError;

/// Truncated Taylor series `Σ a_m (τ − c)^m`, `a_m = f^{(m)}(c)/m!`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries {
    pub center: f64,
    pub coeffs: Vec<Complex<f64>>,
}

impl TaylorSeries {
    pub fn new(center: f64, coeffs: Vec<Complex<f64>>) -> Self {
        Self { center, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, tau: f64) -> Complex<f64> {
        let h = tau - self.center;
        self.coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * h + a)
    }

    /// `f^{(m)}(c)`.
    pub fn derivative(&self, m: usize) -> Complex<f64> {
        let fact: f64 = (1..=m).map(|i| i as f64).product();
        self.coeffs.get(m).copied().unwrap_or_default() * fact
    }

    /// Same polynomial expanded about `center` (Taylor shift by repeated synthetic division).
    pub fn recenter(&self, center: f64) -> Self {
        let h = center - self.center;
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = a[j + 1];
                a[j] += next * h;
            }
        }
        Self { center, coeffs: a }
    }

    /// `|a_M h^M| / |Σ_m a_m h^m|`; zero for the zero series.
    pub fn remainder_ratio(&self, h: f64) -> f64 {
        let Some(&last) = self.coeffs.last() else { return 0.0 };
        let tail = (last * h.powi(self.order() as i32)).norm();
        if tail == 0.0 {
            return 0.0;
        }
        let partial = self.eval(self.center + h).norm();
        if partial == 0.0 {
            f64::INFINITY
        } else {
            tail / partial
        }
    }
}

/// Samples of `ĵ` on `τ ∈ [m, τ_max]` plus the radius parameter `δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticBand {
    tau: Vec<f64>,
    values: Vec<Complex<f64>>,
    pub delta: f64,
    /// Externally supplied expansions; a fit is used when none covers a window.
    pub derivatives: Vec<TaylorSeries>,
}

impl AnalyticBand {
    pub fn new(tau: Vec<f64>, values: Vec<Complex<f64>>, delta: f64) -> Result<Self, InverseError> {
        if tau.len() != values.len() || tau.len() < 2 {
            return Err(InverseError::InvalidParameter(format!(
                "band needs ≥ 2 samples with matching values, got {} and {}",
                tau.len(),
                values.len()
            )));
        }
        if tau.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(InverseError::InvalidParameter("band τ samples not strictly increasing".into()));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(InverseError::InvalidParameter(format!("delta = {delta}")));
        }
        Ok(Self { tau, values, delta, derivatives: vec![] })
    }

    pub fn with_derivatives(mut self, series: TaylorSeries) -> Self {
        self.derivatives.push(series);
        self
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn values(&self) -> &[Complex<f64>] {
        &self.values
    }

    pub fn lo(&self) -> f64 {
        self.tau[0]
    }

    pub fn hi(&self) -> f64 {
        self.tau[self.tau.len() - 1]
    }

    /// `min(δ/2, band width/4)`.
    pub fn half_width(&self) -> f64 {
        fit_half_width(self.lo(), self.hi(), self.delta)
    }

    /// Least-squares polynomial of degree `min(order, window samples − 1)` on
    /// `[c − w, c + w]`, fitted in `s = (τ − c)/w` on the Chebyshev basis.
    pub fn fit(&self, center: f64, order: usize) -> Result<TaylorSeries, InverseError> {
        let w = self.half_width();
        let slack = 1e-12 * (1.0 + center.abs());
        let (s, v): (Vec<f64>, Vec<Complex<f64>>) = self
            .tau
            .iter()
            .zip(self.values.iter())
            .filter(|(&t, _)| (t - center).abs() <= w + slack)
            .map(|(&t, &v)| (((t - center) / w).clamp(-1.0, 1.0), v))
            .unzip();
        if s.len() < 2 {
            return Err(InverseError::InvalidParameter(format!(
                "{} samples in the fit window around {center}",
                s.len()
            )));
        }
        let degree = order.min(s.len() - 1);
        let basis = DMatrix::from_fn(s.len(), degree + 1, |i, m| chebyshev(m, s[i]));
        let svd = basis.svd(true, true);
        let solve = |b: DVector<f64>| svd.solve(&b, 1e-14).expect("U and V were requested");
        let re = solve(DVector::from_iterator(v.len(), v.iter().map(|z| z.re)));
        let im = solve(DVector::from_iterator(v.len(), v.iter().map(|z| z.im)));
        let cheb: Vec<Complex<f64>> = re.iter().zip(im.iter()).map(|(&a, &b)| Complex::new(a, b)).collect();
        let mono = chebyshev_to_monomial(&cheb);
        let coeffs = mono.iter().enumerate().map(|(m, &a)| a / w.powi(m as i32)).collect();
        Ok(TaylorSeries { center, coeffs })
    }
}

pub fn fit_half_width(lo: f64, hi: f64, delta: f64) -> f64 {
    (0.5 * delta).min(0.25 * (hi - lo))
}

/// First-kind Chebyshev points on `[c − w, c + w]`, decreasing.
pub fn chebyshev_nodes(center: f64, half_width: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| center + half_width * (std::f64::consts::PI * (i as f64 + 0.5) / count as f64).cos())
        .collect()
}

fn chebyshev(m: usize, s: f64) -> f64 {
    let (mut a, mut b) = (1.0, s);
    match m {
        0 => a,
        1 => b,
        _ => {
            for _ in 1..m {
                (a, b) = (b, 2.0 * s * b - a);
            }
            b
        }
    }
}

fn chebyshev_to_monomial(c: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let n = c.len();
    let mut out = vec![Complex::new(0.0, 0.0); n];
    // monomial coefficients of T_{m-1}, T_m
    let mut prev = vec![0.0; n];
    let mut cur = vec![0.0; n];
    prev[0] = 1.0;
    if n > 1 {
        cur[1] = 1.0;
    }
    for (m, &cm) in c.iter().enumerate() {
        let t = if m == 0 { &prev } else { &cur };
        for (o, &p) in out.iter_mut().zip(t.iter()) {
            *o += cm * p;
        }
        if m >= 1 && m + 1 < n {
            let mut next = vec![0.0; n];
            for i in 0..n - 1 {
                next[i + 1] += 2.0 * cur[i];
            }
            for i in 0..n {
                next[i] -= prev[i];
            }
            prev = std::mem::replace(&mut cur, next);
        }
    }
    out
}

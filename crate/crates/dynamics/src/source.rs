use kgscat_core::{lit, Grid, LatticeFunction, Real};

use crate::DynamicsError;

/// Temporal profile `j(t)` of a separable source `J(t,x) = j(t)ρ(x)`.
#[derive(Clone, Debug, PartialEq)]
pub enum TemporalProfile<T> {
    /// `e^{-a t²}`.
    Gaussian { a: T },
    /// `e^{-rate·|t|}`.
    ExpDecay { rate: T },
    /// Samples `values[i] = j(start + i·step)`, zero outside, linear in between.
    Samples { start: T, step: T, values: Vec<T> },
}

impl<T: Real> TemporalProfile<T> {
    pub fn eval(&self, t: T) -> T {
        match self {
            Self::Gaussian { a } => (-*a * t * t).exp(),
            Self::ExpDecay { rate } => (-*rate * t.abs()).exp(),
            Self::Samples { start, step, values } => {
                let u = (t - *start) / *step;
                if u < T::zero() {
                    return T::zero();
                }
                let i = u.floor().to_usize().unwrap_or(usize::MAX);
                if i + 1 >= values.len() {
                    return if i + 1 == values.len() && u == lit((values.len() - 1) as f64) {
                        values[i]
                    } else {
                        T::zero()
                    };
                }
                let f = u - lit(i as f64);
                values[i] * (T::one() - f) + values[i + 1] * f
            }
        }
    }

    /// Points where the profile is not smooth; quadrature panels end there.
    pub fn breakpoints(&self) -> Vec<T> {
        match self {
            Self::Gaussian { .. } => vec![],
            Self::ExpDecay { .. } => vec![T::zero()],
            Self::Samples { start, step, values } => {
                (0..values.len()).map(|i| *start + *step * lit(i as f64)).collect()
            }
        }
    }

    /// Half-line `[lo, hi]` outside of which `|j| ≤ cutoff·max|j|`.
    pub fn support(&self, cutoff: f64) -> (T, T) {
        let c: T = lit((1.0 / cutoff).ln().max(0.0));
        match self {
            Self::Gaussian { a } => {
                let r = (c / *a).sqrt();
                (-r, r)
            }
            Self::ExpDecay { rate } => {
                let r = c / *rate;
                (-r, r)
            }
            Self::Samples { start, step, values } => {
                (*start, *start + *step * lit(values.len().saturating_sub(1) as f64))
            }
        }
    }

    /// `ĵ(τ) = (2π)^{-1/2}∫ e^{-iτt} j(t) dt` where a closed form exists (both are real and even).
    pub fn fourier(&self, tau: T) -> Option<T> {
        let two_pi: T = lit(std::f64::consts::TAU);
        match self {
            Self::Gaussian { a } => {
                Some((-tau * tau / (lit::<T>(4.0) * *a)).exp() / (lit::<T>(2.0) * *a).sqrt())
            }
            Self::ExpDecay { rate } => {
                Some(lit::<T>(2.0) * *rate / ((*rate * *rate + tau * tau) * two_pi.sqrt()))
            }
            Self::Samples { .. } => None,
        }
    }

    /// Largest `δ'` with `e^{δ'|t|} j ∈ L¹`; `None` when every rate works.
    pub fn decay_bound(&self) -> Option<T> {
        match self {
            Self::Gaussian { .. } | Self::Samples { .. } => None,
            Self::ExpDecay { rate } => Some(*rate),
        }
    }

    /// Upper bound on `∫_{|t|>r} e^{δ|t|}|j(t)| dt`.
    pub fn tail_bound(&self, r: T, delta: T) -> T {
        let two: T = lit(2.0);
        match self {
            Self::Gaussian { a } => {
                let slope = two * *a * r - delta;
                if slope > T::zero() {
                    two * (delta * r - *a * r * r).exp() / slope
                } else {
                    T::max_value().unwrap_or(T::one() / T::eps())
                }
            }
            Self::ExpDecay { rate } => {
                if delta >= *rate {
                    T::max_value().unwrap_or(T::one() / T::eps())
                } else {
                    two * (-(*rate - delta) * r).exp() / (*rate - delta)
                }
            }
            Self::Samples { start, step, values } => {
                // trapezoid over the samples beyond r, plus the straddling interval in full
                let mut s = T::zero();
                for i in 0..values.len().saturating_sub(1) {
                    let (t0, t1) = (*start + *step * lit(i as f64), *start + *step * lit((i + 1) as f64));
                    if t0.abs().max(t1.abs()) > r {
                        let w0 = (delta * t0.abs()).exp() * values[i].abs();
                        let w1 = (delta * t1.abs()).exp() * values[i + 1].abs();
                        s += (w0 + w1) * *step * lit(0.5);
                    }
                }
                s
            }
        }
    }

    /// `∫ e^{δ|t|}|j(t)| dt` by closed form or trapezoid.
    pub fn weighted_l1(&self, delta: T) -> T {
        match self {
            Self::Gaussian { a } => {
                // 2∫_0^∞ e^{δt - a t²} = √(π/a) e^{δ²/4a} (1 + erf(δ/2√a))
                let pi: T = lit(std::f64::consts::PI);
                let x = delta / (lit::<T>(2.0) * a.sqrt());
                (pi / *a).sqrt() * (x * x).exp() * (T::one() + erf_approx(x))
            }
            Self::ExpDecay { rate } => {
                if delta >= *rate {
                    T::max_value().unwrap_or(T::one() / T::eps())
                } else {
                    lit::<T>(2.0) / (*rate - delta)
                }
            }
            Self::Samples { start, step, values } => {
                let n = values.len();
                let mut s = T::zero();
                for (i, v) in values.iter().enumerate() {
                    let t = *start + *step * lit(i as f64);
                    let w: T = if i == 0 || i + 1 == n { lit(0.5) } else { T::one() };
                    s += w * (delta * t.abs()).exp() * v.abs();
                }
                s * *step
            }
        }
    }
}

// Abramowitz–Stegun 7.1.26; only used for an L¹ bound.
fn erf_approx<T: Real>(x: T) -> T {
    let sign = if x < T::zero() { -T::one() } else { T::one() };
    let x = x.abs();
    let t = T::one() / (T::one() + lit::<T>(0.3275911) * x);
    let poly = t
        * (lit::<T>(0.254829592)
            + t * (lit::<T>(-0.284496736)
                + t * (lit::<T>(1.421413741) + t * (lit::<T>(-1.453152027) + t * lit::<T>(1.061405429)))));
    sign * (T::one() - poly * (-x * x).exp())
}

/// `J(t, x) = j(t)ρ(x)` with an optional decay rate `δ` for the analytic-continuation mode.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceSpec<T: Real> {
    profile: TemporalProfile<T>,
    rho: LatticeFunction<T>,
    delta: Option<T>,
}

impl<T: Real> SourceSpec<T> {
    pub fn new(
        grid: &Grid<T>,
        profile: TemporalProfile<T>,
        rho: LatticeFunction<T>,
        delta: Option<T>,
    ) -> Result<Self, DynamicsError> {
        if rho.len() != grid.n() {
            return Err(DynamicsError::Dimension { expected: grid.n(), got: rho.len() });
        }
        match &profile {
            TemporalProfile::Gaussian { a } if !(*a > T::zero()) => {
                return Err(DynamicsError::InvalidSource(format!("gaussian width parameter {a} must be positive")))
            }
            TemporalProfile::ExpDecay { rate } if !(*rate > T::zero()) => {
                return Err(DynamicsError::InvalidSource(format!("decay rate {rate} must be positive")))
            }
            TemporalProfile::Samples { step, values, .. } => {
                if !(*step > T::zero()) || values.len() < 3 {
                    return Err(DynamicsError::InvalidSource("samples need a positive step and ≥ 3 values".into()));
                }
                let peak = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
                let edge = values[0].abs().max(values[values.len() - 1].abs());
                if !(peak > T::zero()) || edge > peak * lit(1e-8) {
                    return Err(DynamicsError::InvalidSource(format!(
                        "sampled j does not decay at the endpoints ({edge} against peak {peak})"
                    )));
                }
            }
            _ => {}
        }
        if let Some(d) = delta {
            if !(d > T::zero()) {
                return Err(DynamicsError::InvalidSource(format!("δ = {d} must be positive")));
            }
            if let Some(bound) = profile.decay_bound() {
                if d >= bound {
                    return Err(DynamicsError::InvalidSource(format!(
                        "e^(δ|t|) j is not integrable for δ = {d} (profile decays at rate {bound})"
                    )));
                }
            }
        }
        Ok(Self { profile, rho, delta })
    }

    pub fn profile(&self) -> &TemporalProfile<T> {
        &self.profile
    }

    pub fn rho(&self) -> &LatticeFunction<T> {
        &self.rho
    }

    pub fn delta(&self) -> Option<T> {
        self.delta
    }

    pub fn j(&self, t: T) -> T {
        self.profile.eval(t)
    }

    /// Same profile with the spatial part replaced.
    pub fn with_rho(&self, rho: LatticeFunction<T>) -> Self {
        Self { profile: self.profile.clone(), rho, delta: self.delta }
    }
}

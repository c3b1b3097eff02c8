use num_complex::Complex;

use crate::{AnalyticBand, InverseError, TaylorSeries};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuationOptions {
    /// Truncation order `M` of every Taylor sum.
    pub order: usize,
    /// Bound on `|last term| / |partial sum|` at each step.
    pub remainder_tolerance: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self { order: 12, remainder_tolerance: 1e-6 }
    }
}

/// One move of the expansion point by `±δ/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationStep {
    pub center: f64,
    pub next: f64,
    pub delta: f64,
    pub order: usize,
    pub remainder: f64,
    /// Targets evaluated from this center.
    pub evaluated: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Continuation {
    pub taus: Vec<f64>,
    pub values: Vec<Complex<f64>>,
    pub steps: Vec<ContinuationStep>,
    /// Order of the fit that seeded the first expansion (per direction).
    pub fit_orders: Vec<usize>,
}

/// Extends `ĵ` from the band to `targets` by iterated Taylor expansion,
/// moving the center by `δ/2` per step.
pub fn taylor_continue(
    band: &AnalyticBand,
    targets: &[f64],
    options: &ContinuationOptions,
) -> Result<Continuation, InverseError> {
    if let Some(t) = targets.iter().find(|&&t| t >= band.lo() && t <= band.hi()) {
        return Err(InverseError::InvalidParameter(format!("target {t} lies inside the band")));
    }
    let mut out = Continuation { taus: vec![], values: vec![], steps: vec![], fit_orders: vec![] };
    for down in [true, false] {
        let mut pending: Vec<f64> = targets.iter().copied().filter(|&t| (t < band.lo()) == down).collect();
        if pending.is_empty() {
            continue;
        }
        let w = band.half_width();
        let start = if down { band.lo() + w } else { band.hi() - w };
        let mut series = match band.derivatives.iter().find(|s| (s.center - start).abs() <= w) {
            Some(s) => s.clone(),
            None => band.fit(start, options.order)?,
        };
        out.fit_orders.push(series.order());
        let h = if down { -0.5 * band.delta } else { 0.5 * band.delta };
        let far = pending.iter().map(|t| (t - series.center).abs()).fold(0.0, f64::max);
        let max_steps = (far / h.abs()).ceil() as usize + 1;
        for _ in 0..max_steps {
            if pending.is_empty() {
                break;
            }
            let c = series.center;
            let ratio = series.remainder_ratio(h);
            if !(ratio <= options.remainder_tolerance) {
                return Err(InverseError::Divergent {
                    center: c,
                    step: h.abs(),
                    ratio,
                    tolerance: options.remainder_tolerance,
                });
            }
            let reach = c + h;
            let (now, later): (Vec<f64>, Vec<f64>) =
                pending.iter().partition(|&&t| if down { t >= reach } else { t <= reach });
            for &t in &now {
                out.taus.push(t);
                out.values.push(series.eval(t));
            }
            out.steps.push(ContinuationStep {
                center: c,
                next: reach,
                delta: band.delta,
                order: series.order(),
                remainder: ratio,
                evaluated: now.len(),
            });
            pending = later;
            series = series.recenter(reach);
        }
    }
    Ok(out)
}

/// Follows `series` by `steps` moves of `h` and back, returning the final value
/// at the original center.
pub fn round_trip(series: &TaylorSeries, h: f64, steps: usize) -> Complex<f64> {
    let c0 = series.center;
    let mut s = series.clone();
    for i in 1..=steps {
        s = s.recenter(c0 + h * i as f64);
    }
    for i in (0..steps).rev() {
        s = s.recenter(c0 + h * i as f64);
    }
    s.eval(c0)
}

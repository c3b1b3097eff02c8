use kgscat_core::{CVec, FieldOperators64, Grid64};
use kgscat_dynamics::{SourceSpec64, VectorQuadrature64};
use kgscat_scattering::{origin_packets, BandSpec, ScatteringConfig, ScatteringContext};
use kgscat_vacuum::VacuumData;

use crate::InverseError;

/// One `(V, J)` input of the harness.
#[derive(Debug)]
pub struct Case {
    pub ops: FieldOperators64,
    pub source: SourceSpec64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistinguishReport {
    /// `max ‖(S_A − S_B)f‖` over the unit band packets at the origin.
    pub s_distance: f64,
    /// `‖z_A − z_B‖ / ‖z_A‖` on `k_lo ≤ |k| ≤ k_hi` of the band.
    pub z_distance: f64,
    /// The same two numbers between case A at `T_max` and at `shrink·T_max`.
    pub s_floor: f64,
    pub z_floor: f64,
    pub factor: f64,
    /// `|distance(T) − distance(shrink·T)|`: how much the measured separation itself moves with the horizon.
    pub s_drift: f64,
    pub z_drift: f64,
    /// Packet momenta whose Cook residual in case A passes the configured threshold;
    /// both distances and floors are taken on these.
    pub band: Vec<f64>,
}

impl DistinguishReport {
    pub fn s_separated(&self) -> bool {
        self.s_distance >= self.factor * self.s_floor
    }

    pub fn z_separated(&self) -> bool {
        self.z_distance >= self.factor * self.z_floor
    }
}

pub const FLOOR_SHRINK: f64 = 0.875;

pub fn band_s_distance(grid: &Grid64, a: &ScatteringContext, b: &ScatteringContext, band: &BandSpec) -> f64 {
    let d = &a.s - &b.s;
    origin_packets(grid, band).iter().map(|p| grid.norm(&(&d * p.f.values()))).fold(0.0, f64::max)
}

pub fn band_z_distance(a: &CVec<f64>, b: &CVec<f64>, momenta: &[f64], band: &BandSpec) -> f64 {
    if band.momenta.is_empty() {
        return f64::NAN;
    }
    let lo = band.momenta.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = band.momenta.iter().copied().fold(0.0, f64::max);
    let idx: Vec<usize> = (0..momenta.len()).filter(|&i| (lo..=hi).contains(&momenta[i].abs())).collect();
    let d: f64 = idx.iter().map(|&i| (a[i] - b[i]).norm_sqr()).sum();
    let s: f64 = idx.iter().map(|&i| a[i].norm_sqr()).sum();
    if s > 0.0 {
        (d / s).sqrt()
    } else {
        d.sqrt()
    }
}

/// Band momenta at which both `w₊` and `w₋` of `ctx` meet the Cook threshold.
pub fn converged_band(ctx: &ScatteringContext) -> Vec<f64> {
    let ok = |w: &kgscat_scattering::WaveOperator, k0: f64| {
        w.log.iter().any(|r| r.k0 == k0 && r.cook <= ctx.config.cook_threshold)
    };
    ctx.config.band.momenta.iter().copied().filter(|&k| ok(&ctx.w_plus, k) && ok(&ctx.w_minus, k)).collect()
}

fn data(case: &Case, config: &ScatteringConfig, quad: &VectorQuadrature64) -> Result<VacuumData, InverseError> {
    let ctx = ScatteringContext::build(&case.ops, Some(&case.source), config, quad)?;
    Ok(VacuumData::new(&case.ops, ctx, case.source.clone())?)
}

/// Distances between two cases against the horizon-truncation floor of the first.
pub fn distinguishability_harness(
    a: &Case,
    b: &Case,
    config: &ScatteringConfig,
    quad: &VectorQuadrature64,
    factor: f64,
) -> Result<DistinguishReport, InverseError> {
    let short = ScatteringConfig { t_max: FLOOR_SHRINK * config.t_max, ..config.clone() };
    let same = a.ops.potential() == b.ops.potential() && a.ops.mass() == b.ops.mass();
    let pair = |cfg: &ScatteringConfig| -> Result<(VacuumData, VacuumData), InverseError> {
        let (da, db) = rayon::join(|| data(a, cfg, quad), || if same { None } else { Some(data(b, cfg, quad)) });
        let da = da?;
        let db = match db {
            Some(r) => r?,
            None => {
                let ctx = da.context.with_source(&b.ops, &b.source, quad)?;
                VacuumData::new(&b.ops, ctx, b.source.clone())?
            }
        };
        Ok((da, db))
    };
    let (long, shortened) = rayon::join(|| pair(config), || pair(&short));
    let ((da, db), (sa, sb)) = (long?, shortened?);
    let momenta = da.momenta().to_vec();
    let g = a.ops.grid();
    let kept = converged_band(&da.context);
    let band = &BandSpec { momenta: kept.clone(), width: config.band.width };
    let s_distance = band_s_distance(g, &da.context, &db.context, band);
    let z_distance = band_z_distance(da.z(), db.z(), &momenta, band);
    Ok(DistinguishReport {
        s_distance,
        z_distance,
        s_floor: band_s_distance(g, &da.context, &sa.context, band),
        z_floor: band_z_distance(da.z(), sa.z(), &momenta, band),
        s_drift: (s_distance - band_s_distance(g, &sa.context, &sb.context, band)).abs(),
        z_drift: (z_distance - band_z_distance(sa.z(), sb.z(), &momenta, band)).abs(),
        factor,
        band: kept,
    })
}

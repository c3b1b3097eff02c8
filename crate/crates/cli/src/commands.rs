use std::path::{Path, PathBuf};

use kgscat_core::{
    fractional_power_apply, hs_diagnostics, hs_norm, BalakrishnanQuadrature, FieldOperators64, SymOperator,
};
use kgscat_fock::identity_suite;
use kgscat_inverse::{reconstruct_j, reconstruct_rho, ContinuationOptions, InverseError, JOptions, RhoOptions, ZSamples};
use kgscat_scattering::{
    s_intertwining_residual, gaussian_packet, geometric_decay, origin_packets, s_matrix_checks, transfer_comparison,
    DiagnosticRow, ScatteringContext,
};
use kgscat_vacuum::{band_indices, lambdas_to_saturation, relative_l2, select, VacuumData};
use nalgebra::DMatrix;
use num_complex::Complex;

use crate::config::RunConfig;
use crate::io::{num, read_complex, write_complex, write_rows};
use crate::CliError;

/// A diagnostic that can only warn: resolution indicators rather than correctness checks.
struct Row {
    inner: DiagnosticRow,
    advisory: bool,
}

impl Row {
    fn status(&self) -> &'static str {
        match (self.inner.pass, self.advisory) {
            (true, _) => "pass",
            (false, true) => "warn",
            (false, false) => "fail",
        }
    }
}

impl From<DiagnosticRow> for Row {
    fn from(inner: DiagnosticRow) -> Self {
        Self { inner, advisory: false }
    }
}

fn write_diagnostics(path: &Path, rows: &[Row]) -> Result<(), CliError> {
    write_rows(
        path,
        &DiagnosticRow::HEADER,
        rows.iter().map(|r| {
            [r.inner.check.clone(), r.inner.parameter.clone(), num(r.inner.residual), num(r.inner.threshold), r.status().into()]
        }),
    )
}

/// Exit status of a command that ran to completion.
pub struct Outcome {
    pub failures: Vec<String>,
}

impl Outcome {
    fn from_rows(rows: &[Row]) -> Self {
        Self {
            failures: rows
                .iter()
                .filter(|r| r.status() == "fail")
                .map(|r| format!("{} ({}): {:e} > {:e}", r.inner.check, r.inner.parameter, r.inner.residual, r.inner.threshold))
                .collect(),
        }
    }

    fn ok() -> Self {
        Self { failures: vec![] }
    }
}

fn context(cfg: &RunConfig, ops: &FieldOperators64, with_source: bool) -> Result<(ScatteringContext, Option<VacuumData>), CliError> {
    let quad = cfg.quadrature();
    if with_source {
        let src = cfg.source(ops.grid())?;
        let ctx = ScatteringContext::build(ops, Some(&src), &cfg.scattering(), &quad).map_err(CliError::numerical)?;
        let data = VacuumData::new(ops, ctx.clone(), src).map_err(CliError::numerical)?;
        Ok((ctx, Some(data)))
    } else {
        let ctx = ScatteringContext::build(ops, None, &cfg.scattering(), &quad).map_err(CliError::numerical)?;
        Ok((ctx, None))
    }
}

fn wave_rows(ctx: &ScatteringContext, tol: f64) -> Vec<Row> {
    let mut rows = vec![];
    for w in [&ctx.w_plus, &ctx.w_minus] {
        for r in &w.log {
            let p = format!("w{} k0={}", w.direction.symbol(), r.k0);
            rows.push(DiagnosticRow::at_most("cook", p.clone(), r.cook, tol).into());
            rows.push(DiagnosticRow::at_most("intertwining", p, r.intertwining, tol).into());
        }
    }
    rows
}

pub fn forward(cfg: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let ops = cfg.operators()?;
    let grid = ops.grid();
    let p = &cfg.pipeline;
    let (ctx, data) = context(cfg, &ops, true)?;
    let data = data.expect("built with a source");

    write_complex(&out.join("z.csv"), ["k", "re", "im"], data.momenta().iter().copied().zip(data.z().iter()))?;

    let t = &cfg.trace;
    let steps = ((t.t_end - t.t_start) / t.t_step + 1e-9).floor() as usize;
    let times: Vec<f64> = (0..=steps).map(|i| t.t_start + i as f64 * t.t_step).collect();
    let f = gaussian_packet(grid, 0.0, t.k0, t.width);
    let trace = data.response_trace(&f, &times);
    write_complex(&out.join("F_trace.csv"), ["t", "re", "im"], trace.iter().map(|(t, v)| (*t, v)))?;

    let mut rows = wave_rows(&ctx, p.cook_tolerance);
    let gi = &ctx.source.as_ref().expect("source asymptotics").g_infinity;
    rows.push(DiagnosticRow::at_most("g_infinity_formulas", "relative", gi.relative_difference, p.g_infinity_tolerance).into());
    for &k0 in &p.band_momenta {
        let f = gaussian_packet(grid, 0.0, k0, p.band_width);
        for e in data.dual_path(&f) {
            rows.push(DiagnosticRow::at_most("dual_path", format!("{} k0={k0}", e.identity), e.residual, p.dual_path_tolerance).into());
        }
    }
    let idx = band_indices(data.momenta(), p.band_k_max);
    let ks: Vec<f64> = idx.iter().map(|&i| data.momenta()[i]).collect();
    let lambdas = if p.lambdas.is_empty() { lambdas_to_saturation(grid.half_width()) } else { p.lambdas.clone() };
    match data.z_limit(&lambdas, &ks) {
        Ok(lim) => {
            let e = relative_l2(&lim.extrapolated, &select(data.z(), &idx));
            rows.push(DiagnosticRow::at_most("z_lambda_limit", format!("|k|<={}", p.band_k_max), e, p.z_limit_tolerance).into());
        }
        Err(e) => {
            rows.push(DiagnosticRow::at_most("z_lambda_cauchy", e.to_string(), f64::INFINITY, p.z_limit_tolerance).into())
        }
    }
    let z_finite = data.z().iter().all(|v| v.re.is_finite() && v.im.is_finite());
    rows.push(DiagnosticRow::at_most("z_finite", "all k", if z_finite { 0.0 } else { f64::INFINITY }, 0.0).into());
    write_diagnostics(&out.join("diagnostics.csv"), &rows)?;

    let worst = |w: &kgscat_scattering::WaveOperator| w.log.iter().map(|r| r.cook).fold(0.0, f64::max);
    let summary = vec![
        ("n", grid.n().to_string()),
        ("L", num(grid.half_width())),
        ("mass", num(ops.mass())),
        ("T_max", num(ctx.config.t_max)),
        ("potential_max", num(ops.potential().iter().copied().fold(0.0, f64::max))),
        ("cook_worst_w_plus", num(worst(&ctx.w_plus))),
        ("cook_worst_w_minus", num(worst(&ctx.w_minus))),
        ("g_infinity_relative_difference", num(gi.relative_difference)),
        ("z_norm", num(data.z().norm())),
        ("warnings", ctx.log.warnings.len().to_string()),
    ];
    write_rows(&out.join("context.csv"), &["quantity", "value"], summary.into_iter().map(|(k, v)| [k.to_string(), v]))?;
    Ok(Outcome::from_rows(&rows))
}

fn read_z(cfg: &RunConfig, path: &Path) -> Result<ZSamples, CliError> {
    let (ks, vs) = read_complex(path, ["k", "re", "im"])?;
    let grid = cfg.grid()?;
    if ks.len() != grid.n() {
        return Err(CliError::Schema(format!("{}: {} rows for a grid of {} points", path.display(), ks.len(), grid.n())));
    }
    let z = ZSamples::new(ks, vs).map_err(|e| CliError::Schema(e.to_string()))?;
    z.on_lattice(&grid).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    Ok(z)
}

type Report = Vec<[String; 3]>;

fn entry(section: &str, key: impl ToString, value: impl ToString) -> [String; 3] {
    [section.to_string(), key.to_string(), value.to_string()]
}

fn finish_report(path: &Path, mut report: Report, result: Result<Outcome, InverseError>) -> Result<Outcome, CliError> {
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            report.push(entry("error", "reconstruction", &e));
            write_rows(path, &["section", "key", "value"], report)?;
            return Err(CliError::numerical(e));
        }
    };
    write_rows(path, &["section", "key", "value"], report)?;
    Ok(outcome)
}

pub fn invert_rho(cfg: &RunConfig, z_path: &Path, out: &Path) -> Result<Outcome, CliError> {
    let z = read_z(cfg, z_path)?;
    let profile = cfg.profile().ok_or_else(|| CliError::Config("invert-rho needs source.j".into()))?;
    let ops = cfg.operators()?;
    let grid = ops.grid();
    let (ctx, _) = context(cfg, &ops, false)?;
    let p = &cfg.pipeline;
    let opts = RhoOptions { mask_threshold: p.mask_threshold, band_k_max: p.band_k_max, ..RhoOptions::default() };
    let mut report = vec![entry("input", "z", z_path.display())];
    let result = reconstruct_rho(&z, &profile, grid, ops.mass(), &ctx, &cfg.quadrature(), &opts).and_then(|r| {
        write_complex(&out.join("rho_rec.csv"), ["x", "re", "im"], grid.points().iter().copied().zip(r.rho.values().iter()))
            .map_err(|e| InverseError::InvalidParameter(e.to_string()))?;
        for (name, set) in [("masked", &r.masked), ("filled", &r.filled), ("unrecoverable", &r.unrecoverable)] {
            report.push(entry("mask", format!("{name}_count"), set.len()));
            report.extend(set.iter().map(|&i| entry(name, "k", num(r.momenta[i]))));
        }
        let mut outcome = Outcome::ok();
        if let Some(truth) = cfg.rho(grid) {
            let e = r.relative_error(&truth);
            report.push(entry("error", "rho_relative_l2", num(e)));
            report.push(entry("error", "rho_tolerance", num(p.rho_tolerance)));
            if !(e <= p.rho_tolerance) {
                outcome.failures.push(format!("rho relative error {e:e} > {:e}", p.rho_tolerance));
            }
        }
        Ok(outcome)
    });
    finish_report(&out.join("rho_report.csv"), report, result)
}

pub fn invert_j(cfg: &RunConfig, z_path: &Path, out: &Path) -> Result<Outcome, CliError> {
    let delta = cfg.source.delta.ok_or_else(|| CliError::Config("invert-j needs source.delta".into()))?;
    let z = read_z(cfg, z_path)?;
    let ops = cfg.operators()?;
    let grid = ops.grid();
    let rho = cfg.rho(grid).ok_or_else(|| CliError::Config("invert-j needs source.rho".into()))?;
    let (ctx, _) = context(cfg, &ops, false)?;
    let p = &cfg.pipeline;
    let opts = JOptions {
        continuation: ContinuationOptions { order: p.taylor_order, remainder_tolerance: p.remainder_tolerance },
        band_k_max: p.band_k_max,
        mask_threshold: p.mask_threshold,
        ..JOptions::new(delta)
    };
    let mut report = vec![entry("input", "z", z_path.display()), entry("input", "delta", num(delta))];
    let result = reconstruct_j(&z, &rho, grid, ops.mass(), &ctx, &opts).and_then(|r| {
        let wrap = |e: CliError| InverseError::InvalidParameter(e.to_string());
        write_complex(&out.join("j_rec.csv"), ["t", "re", "im"], r.times.iter().copied().zip(r.j.iter())).map_err(wrap)?;
        write_complex(&out.join("j_hat_rec.csv"), ["tau", "re", "im"], r.tau.iter().copied().zip(r.j_hat.iter()))
            .map_err(wrap)?;
        report.push(entry("band", "anchor_k", num(r.anchor)));
        report.push(entry("band", "tau_lo", num(r.band.0)));
        report.push(entry("band", "tau_hi", num(r.band.1)));
        report.push(entry("band", "fit_order", r.fit_order));
        report.push(entry("mask", "masked_count", r.masked.len()));
        report.extend(r.masked.iter().map(|&k| entry("masked", "k", num(k))));
        for (i, s) in r.steps.iter().enumerate() {
            report.push(entry(
                "step",
                i,
                format!("center={} next={} delta={} order={} remainder={:e} evaluated={}", s.center, s.next, s.delta, s.order, s.remainder, s.evaluated),
            ));
        }
        report.push(entry("step", "gap_steps", r.gap_steps()));
        let mut outcome = Outcome::ok();
        if let Some(truth) = cfg.profile() {
            if truth.fourier(0.0).is_some() {
                let e = r.sup_error(|t| Complex::from(truth.fourier(t).unwrap_or(f64::NAN)));
                report.push(entry("error", "j_hat_sup_relative", num(e)));
                report.push(entry("error", "j_tolerance", num(p.j_tolerance)));
                if !(e <= p.j_tolerance) {
                    outcome.failures.push(format!("j sup error {e:e} > {:e}", p.j_tolerance));
                }
            }
        }
        Ok(outcome)
    });
    finish_report(&out.join("j_report.csv"), report, result)
}

fn coarse(cfg: &RunConfig) -> RunConfig {
    let mut c = cfg.clone();
    c.grid.n = cfg.grid.n / 2;
    c
}

pub fn diagnose(cfg: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let ops = cfg.operators()?;
    let grid = ops.grid();
    let p = &cfg.pipeline;
    let mut rows: Vec<Row> = vec![];

    let v_min = ops.potential().iter().copied().fold(f64::INFINITY, f64::min);
    rows.push(DiagnosticRow::at_most("potential_nonnegative", "min V", (-v_min).max(0.0), 0.0).into());

    let hs = hs_diagnostics(&ops, p.hs_epsilon);
    for (q, n, v) in hs.rows() {
        rows.push(DiagnosticRow::at_most("hs_norm", format!("{q} n={n}"), v, f64::MAX).into());
    }
    let coarse_cfg = coarse(cfg);
    let coarse_ops = coarse_cfg.operators()?;
    let change = hs.max_relative_change(&hs_diagnostics(&coarse_ops, p.hs_epsilon));
    rows.push(Row {
        inner: DiagnosticRow::at_most("hs_refinement", format!("n={} vs {}", grid.n(), grid.n() / 2), change, p.refinement_tolerance),
        advisory: true,
    });

    let v = grid.sample(|x| (-(x - 1.0) * (x - 1.0) / 4.0).exp() * (1.0 + 0.3 * x).cos());
    let shifted = |h: &kgscat_core::SymOperator64| {
        SymOperator::new(h.matrix() + DMatrix::identity(grid.n(), grid.n())).map_err(CliError::from)
    };
    let (free, full) = (shifted(ops.h0())?, shifted(ops.h())?);
    for (name, a, alpha) in [("h0+1", &free, 0.5), ("h+1", &full, 0.25), ("h+1", &full, 0.5), ("h+1", &full, 0.75)] {
        let want = a.function_matrix(|e| e.powf(alpha)) * &v;
        let e = match fractional_power_apply(a, alpha, &v, &BalakrishnanQuadrature::default()) {
            Ok(got) => (&got.value - &want).norm() / want.norm(),
            Err(_) => f64::INFINITY,
        };
        rows.push(DiagnosticRow::at_most("balakrishnan_vs_spectral", format!("{name} alpha={alpha}"), e, p.fractional_tolerance).into());
    }

    if ops.has_potential() {
        let d = geometric_decay(&ops, &[2.0, 4.0, 8.0, 16.0]);
        for w in d.windows(2) {
            let ratio = if w[0].1 > 0.0 { w[1].1 / w[0].1 } else { 0.0 };
            rows.push(DiagnosticRow::at_most("geometric_decay", format!("R={} / R={}", w[1].0, w[0].0), ratio, 0.5).into());
        }
    }

    let (ctx, _) = context(cfg, &ops, false)?;
    rows.extend(wave_rows(&ctx, p.cook_tolerance));
    let packets = origin_packets(grid, &cfg.band());
    for c in s_matrix_checks(&ops, &ctx.s, &packets) {
        rows.push(DiagnosticRow::at_most("s_unitarity", format!("k0={}", c.k0), c.unitarity, p.unitarity_tolerance).into());
        rows.push(DiagnosticRow::at_most("s_energy_commutator", format!("k0={}", c.k0), c.commutator, p.unitarity_tolerance).into());
    }
    for c in transfer_comparison(&ops, &ctx.s, &packets) {
        rows.push(DiagnosticRow::at_most("transfer_matrix", format!("k0={}", c.k0), c.discrepancy(), p.transfer_tolerance).into());
    }
    let r = s_intertwining_residual(&ops, &ctx.w_plus.matrix, &ctx.w_minus.matrix, &ctx.s, &packets);
    for (k0, v) in &r.packets {
        rows.push(DiagnosticRow::at_most("s_intertwining", format!("k0={k0}"), *v, p.s_intertwining_tolerance).into());
    }
    for (sym, w) in [("+", &ctx.w_blocks_plus), ("-", &ctx.w_blocks_minus)] {
        rows.push(DiagnosticRow::at_most("w_block_conjugation", format!("W{sym}"), w.conjugation_defect(), 1e-10).into());
    }
    let (coarse_ctx, _) = context(&coarse_cfg, &coarse_ops, false)?;
    for (sym, a, b) in [("+", &ctx.w_blocks_plus, &coarse_ctx.w_blocks_plus), ("-", &ctx.w_blocks_minus, &coarse_ctx.w_blocks_minus)] {
        let (hf, hc) = (hs_norm(&a.mp), hs_norm(&b.mp));
        let change = if hf.max(hc) > 0.0 { (hf - hc).abs() / hf.max(hc) } else { 0.0 };
        rows.push(Row {
            inner: DiagnosticRow::at_most("w_block_hs_refinement", format!("W{sym} -+ n={} vs {}", grid.n(), grid.n() / 2), change, p.refinement_tolerance),
            advisory: true,
        });
    }
    write_diagnostics(&out.join("diagnostics.csv"), &rows)?;
    Ok(Outcome::from_rows(&rows))
}

pub fn fock_check(cfg: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let f = &cfg.fock;
    let rows = identity_suite::<f64>(f.modes, f.n_max, cfg.seed).map_err(|e| CliError::Config(e.to_string()))?;
    write_rows(
        &out.join("fock_check.csv"),
        &["identity", "parameters", "residual"],
        rows.iter().map(|r| [r.identity.to_string(), r.parameters.clone(), num(r.residual)]),
    )?;
    Ok(Outcome {
        failures: rows
            .iter()
            .filter(|r| !(r.residual <= f.tolerance))
            .map(|r| format!("{} ({}): {:e} > {:e}", r.identity, r.parameters, r.residual, f.tolerance))
            .collect(),
    })
}

pub fn default_z_path(out: &Path, given: Option<PathBuf>) -> PathBuf {
    given.unwrap_or_else(|| out.join("z.csv"))
}

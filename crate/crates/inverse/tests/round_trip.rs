mod common;
use common::*;
use kgscat_core::*;
use kgscat_dynamics::*;
use kgscat_inverse::*;
use num_complex::Complex;

fn rho_rec(fx: &Fixture, z: &ZSamples, opts: &RhoOptions) -> Result<RhoReconstruction, InverseError> {
    reconstruct_rho(z, fx.profile(), fx.grid(), 1.0, &fx.data.context, &quad(), opts)
}

fn j_rec(fx: &Fixture, z: &ZSamples, delta: f64) -> Result<JReconstruction, InverseError> {
    reconstruct_j(z, fx.rho(), fx.grid(), 1.0, &fx.data.context, &JOptions::new(delta))
}

#[test]
fn rho_round_trip_free() {
    let fx = free();
    let r = rho_rec(fx, &fx.samples(), &RhoOptions::default()).unwrap();
    let e = r.relative_error(fx.rho());
    println!("free rho round trip {e:.3e}, {} masked", r.masked.len());
    assert!(e <= 1e-6);
    // everything masked sits in the UV tail, no gap inside the zone
    assert!(r.filled.is_empty());
    assert_eq!(r.unrecoverable, r.masked);
    assert!(r.masked.iter().all(|&i| r.momenta[i].abs() > 3.0));
}

#[test]
fn rho_round_trip_gaussian_potential() {
    let fx = interacting();
    let r = rho_rec(fx, &fx.samples(), &RhoOptions::default()).unwrap();
    let e = r.relative_error(fx.rho());
    println!("gaussian V rho round trip {e:.3e}");
    assert!(e <= 1e-2);
}

#[test]
fn zero_z_gives_zero_rho_and_j() {
    let fx = free();
    let z = fx.samples().scaled(Complex::new(0.0, 0.0));
    let r = rho_rec(fx, &z, &RhoOptions::default()).unwrap();
    assert_eq!(r.rho.norm(), 0.0);
    let j = j_rec(fx, &z, 1.0).unwrap();
    assert!(j.j_hat.iter().chain(j.j.iter()).all(|v| v.norm() == 0.0));
}

#[test]
fn wide_mask_is_degenerate() {
    let fx = free();
    let opts = RhoOptions { mask_threshold: 0.5, ..RhoOptions::default() };
    match rho_rec(fx, &fx.samples(), &opts) {
        Err(InverseError::SpectrallyDegenerate { masked, total }) => assert!(masked * 5 > total),
        other => panic!("{other:?}"),
    }
}

#[test]
fn missing_lattice_sample_is_reported() {
    let fx = free();
    let mut z = fx.samples();
    z.momenta.remove(100);
    z.values.remove(100);
    assert!(matches!(rho_rec(fx, &z, &RhoOptions::default()), Err(InverseError::MissingSample { .. })));
}

#[test]
fn isolated_zero_of_j_hat_is_bridged() {
    // j = (1 − 8t²)e^{-t²}: ĵ = ĵ₀(τ)(2τ² − 3), a simple zero at τ = √1.5
    let fx = free();
    let values: Vec<f64> = (0..=1200).map(|i| -6.0 + 0.01 * i as f64).map(|t| (1.0 - 8.0 * t * t) * (-t * t).exp()).collect();
    let profile = TemporalProfile::Samples { start: -6.0, step: 0.01, values };
    let g = fx.grid();
    let eps: Vec<f64> = g.momenta().iter().map(|&k| dispersion(g, 1.0, k)).collect();
    let jh = temporal_transform(&profile, &eps, &quad()).unwrap();
    // noiseless z assembled from the factorisation, V ≡ 0
    let rhat = fx.data.context.fourier.forward(fx.rho().values());
    let z: Vec<Complex<f64>> =
        (0..g.n()).map(|i| jh[i] * rhat[i] * kgscat_vacuum::CONVENTIONS.weight(eps[i])).collect();
    let z = ZSamples::new(g.momenta(), z).unwrap();
    let opts = RhoOptions { mask_threshold: 0.1, ..RhoOptions::default() };
    let r = reconstruct_rho(&z, &profile, g, 1.0, &fx.data.context, &quad(), &opts).unwrap();
    assert!(!r.filled.is_empty());
    assert!(r.filled.iter().all(|&i| (eps[i] - 1.5f64.sqrt()).abs() < 0.2), "{:?}", r.filled);
    let e = r.relative_error(fx.rho());
    println!("bridged {} cells, rho error {e:.3e}", r.filled.len());
    assert!(e <= 1e-3);
}

#[test]
fn j_round_trip_free_gaussian() {
    let fx = free();
    let j = j_rec(fx, &fx.samples(), 1.0).unwrap();
    let e = j.sup_error(gaussian_hat);
    println!("free gaussian j: sup error {e:.3e}, fit order {}, {} steps", j.fit_order, j.steps.len());
    assert!(e <= 1e-3);
    assert_eq!(j.fit_order, 12);
    assert!(j.gap_steps() <= 4);
    assert!(j.steps.iter().all(|s| s.remainder <= 1e-6));
    assert!((j.anchor).abs() < 1e-12, "|ℱρ| peaks at k = 0 for a centred gaussian");
    // reality: ĵ(−τ) = conj ĵ(τ)
    let n = j.tau.len();
    for i in 0..n / 2 {
        assert!((j.tau[i] + j.tau[n - 1 - i]).abs() < 1e-14);
        assert!((j.j_hat[i] - j.j_hat[n - 1 - i].conj()).norm() < 1e-14);
    }
}

#[test]
fn j_time_profile_matches_band_limited_truth() {
    let fx = free();
    let j = j_rec(fx, &fx.samples(), 1.0).unwrap();
    let exact: Vec<Complex<f64>> = j.tau.iter().map(|&t| gaussian_hat(t)).collect();
    let worst = j
        .times
        .iter()
        .zip(j.j.iter())
        .map(|(&t, v)| (v - inverse_transform(&j.tau, &exact, t)).norm())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-5, "{worst:e}");
    // the band limit |τ| ≤ τ_max leaves a visible but small truncation of e^{-t²}
    let mid = j.times.iter().position(|&t| t.abs() < 1e-12).unwrap();
    assert!((j.j[mid].re - 1.0).abs() < 0.1);
}

#[test]
fn two_sided_exponential_delta_one_and_three() {
    let fx = free().with_profile(TemporalProfile::ExpDecay { rate: 2.0 });
    let z = fx.samples();
    let ok = j_rec(&fx, &z, 1.0).unwrap();
    let e = ok.sup_error(|t| fx.profile().fourier(t).unwrap().into());
    println!("e^(-2|t|), delta = 1: sup error {e:.3e}");
    assert!(e <= 1e-3);
    assert!(matches!(j_rec(&fx, &z, 3.0), Err(InverseError::Divergent { .. })));
}

#[test]
fn zero_rho_has_no_anchor() {
    let fx = free();
    let zero = LatticeFunction::zeros(fx.grid());
    let r = reconstruct_j(&fx.samples(), &zero, fx.grid(), 1.0, &fx.data.context, &JOptions::new(1.0));
    assert!(matches!(r, Err(InverseError::NoAnchor { .. })));
}

#[test]
fn gaussian_potential_j_band_is_cook_limited() {
    // the continuation is rejected: the band quotient inherits the slow-packet
    // wave-operator error and a degree-12 fit on it has no convergent tail
    let fx = interacting();
    match j_rec(fx, &fx.samples(), 1.0) {
        Err(InverseError::Divergent { center, .. }) => assert_eq!(center, 1.5),
        other => panic!("{other:?}"),
    }
}

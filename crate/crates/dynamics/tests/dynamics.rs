use kgscat_core::linalg::{complex_mul, max_abs};
use kgscat_core::*;
use kgscat_dynamics::*;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

fn ops(n: usize, amp: f64) -> FieldOperators64 {
    let g = Grid::new(n, 20.0, Boundary::Periodic).unwrap();
    let v = if amp == 0.0 { PotentialSpec::Zero } else { PotentialSpec::gaussian(amp, 1.0) };
    FieldOperators::new(g, &v, 1.0).unwrap()
}

fn bump(g: &Grid64, x0: f64) -> LatticeFunction64 {
    LatticeFunction::from_real(g, |x| (-(x - x0) * (x - x0) / 2.0).exp())
}

fn gaussian_source(o: &FieldOperators64) -> SourceSpec64 {
    SourceSpec::new(o.grid(), TemporalProfile::Gaussian { a: 1.0 }, bump(o.grid(), 0.0), None).unwrap()
}

fn quad() -> VectorQuadrature64 {
    VectorQuadrature::new(QuadratureSpec::default())
}

#[test]
fn quadrature_basic_integrals() {
    let q = quad();
    let one = |f: fn(f64) -> f64| move |s: f64| DVector::from_element(1, Complex::from(f(s)));
    let r = q.integrate(one(|s| 3.0 * s * s), 0.0, 2.0, &[]).unwrap();
    assert!((r.value[0].re - 8.0).abs() < 1e-13);
    let r = q.integrate(one(|s| (-s * s).exp()), -7.0, 7.0, &[]).unwrap();
    assert!((r.value[0].re - std::f64::consts::PI.sqrt()).abs() < 1e-11);
    let r = q.integrate(one(|s| 3.0 * s * s), 2.0, 0.0, &[]).unwrap();
    assert!((r.value[0].re + 8.0).abs() < 1e-13);
    // kink at 0 handled through a breakpoint
    let r = q.integrate(one(|s| (-2.0 * s.abs()).exp()), -1.3, 2.1, &[0.0]).unwrap();
    let want = (1.0 - (-2.6f64).exp()) / 2.0 + (1.0 - (-4.2f64).exp()) / 2.0;
    assert!((r.value[0].re - want).abs() < 1e-11);
    let tight = VectorQuadrature::<f64>::new(QuadratureSpec { max_depth: 2, ..QuadratureSpec::default() });
    let bad = tight.integrate(one(|s| 1.0 / s.sqrt()), 1e-300, 1.0, &[]);
    assert!(matches!(bad, Err(DynamicsError::QuadratureNotConverged { .. })));
}

#[test]
fn profiles_and_transforms() {
    let g = TemporalProfile::<f64>::Gaussian { a: 1.0 };
    let e = TemporalProfile::<f64>::ExpDecay { rate: 2.0 };
    let q = quad();
    // ĵ(τ) against a direct quadrature of (2π)^{-1/2}∫cos(τt)j(t)dt
    for p in [&g, &e] {
        for tau in [0.0, 0.7, 2.5] {
            let (lo, hi) = p.support(1e-18);
            let r = q
                .integrate(|t| DVector::from_element(1, Complex::from((tau * t).cos() * p.eval(t))), lo, hi, &p.breakpoints())
                .unwrap();
            let want = r.value[0].re / std::f64::consts::TAU.sqrt();
            assert!((p.fourier(tau).unwrap() - want).abs() < 1e-10, "{p:?} {tau}");
        }
    }
    let s = TemporalProfile::<f64>::Samples { start: -1.0, step: 0.5, values: vec![0.0, 1.0, 3.0, 1.0, 0.0] };
    assert_eq!(s.eval(-0.25), 2.0);
    assert_eq!(s.eval(-2.0), 0.0);
    assert!((s.weighted_l1(0.0) - 2.5).abs() < 1e-14);
    assert!((e.weighted_l1(1.0) - 2.0).abs() < 1e-14);
    assert!((g.weighted_l1(0.0) - std::f64::consts::PI.sqrt()).abs() < 1e-6);
}

#[test]
fn source_validation() {
    let o = ops(64, 0.0);
    let rho = bump(o.grid(), 0.0);
    assert!(SourceSpec::new(o.grid(), TemporalProfile::ExpDecay { rate: 2.0 }, rho.clone(), Some(1.0)).is_ok());
    assert!(SourceSpec::new(o.grid(), TemporalProfile::ExpDecay { rate: 2.0 }, rho.clone(), Some(3.0)).is_err());
    assert!(SourceSpec::new(o.grid(), TemporalProfile::Gaussian { a: -1.0 }, rho.clone(), None).is_err());
    let flat = TemporalProfile::Samples { start: 0.0, step: 0.1, values: vec![1.0; 10] };
    assert!(SourceSpec::new(o.grid(), flat, rho, None).is_err());
}

#[test]
fn propagator_unitary_group_and_generator() {
    let o = ops(128, 0.5);
    let w = o.omega();
    let id = propagator(w, 0.0);
    assert!(max_abs(&(id - DMatrix::identity(128, 128))) < 1e-12);
    let (u1, u2, u3) = (propagator(w, 1.3), propagator(w, -0.4), propagator(w, 0.9));
    assert!(max_abs(&(complex_mul(&u1.adjoint(), &u1) - DMatrix::identity(128, 128))) < 1e-9);
    assert!(max_abs(&(complex_mul(&u1, &u2) - u3)) < 1e-9);
    let f = bump(o.grid(), 1.0).into_values();
    let uf = &propagator(w, 2.0) * &f;
    assert!((uf.norm() - f.norm()).abs() < 1e-9 * f.norm());
    // central difference of e^{-itω}f at 0 against −iωf
    let target = w.apply(&f) * Complex::new(0.0, -1.0);
    let err = |dt: f64| {
        let d = (&propagator(w, dt) * &f - &propagator(w, -dt) * &f) / Complex::from(2.0 * dt);
        (d - &target).norm() / target.norm()
    };
    let (e1, e2) = (err(0.02), err(0.01));
    assert!(e2 < e1 / 3.5 && e2 < 1e-4, "{e1:e} {e2:e}");
}

#[test]
fn flow_at_zero_and_energy_conservation() {
    let o = ops(128, 0.5);
    let g = o.grid();
    let phi = bump(g, 2.0);
    let pi = LatticeFunction::from_real(g, |x| x * (-x * x / 3.0).exp());
    let q = quad();
    let s0 = classical_flow(&o, &phi, &pi, None, 0.0, &q).unwrap();
    assert!((s0.phi.values() - phi.values()).norm() < 1e-12);
    assert!((s0.pi.values() - pi.values()).norm() < 1e-12);
    let e0 = s0.energy(&o);
    for k in 1..=10 {
        let s = classical_flow(&o, &phi, &pi, None, k as f64, &q).unwrap();
        assert!((s.energy(&o) - e0).abs() < 1e-8 * e0);
    }
    // composition without a source
    let mid = classical_flow(&o, &phi, &pi, None, 2.5, &q).unwrap();
    let two = classical_flow(&o, &mid.phi, &mid.pi, None, 4.0, &q).unwrap();
    let one = classical_flow(&o, &phi, &pi, None, 6.5, &q).unwrap();
    assert!((two.phi.values() - one.phi.values()).norm() < 1e-8);
    assert!((two.pi.values() - one.pi.values()).norm() < 1e-8);
}

/// Independent RK4 integration of φ' = π, π' = −(h + m²)φ + j(t)ρ.
fn rk4(o: &FieldOperators64, src: &SourceSpec64, t: f64, steps: usize) -> (DVector<f64>, DVector<f64>) {
    let a = o.h().matrix() + DMatrix::identity(o.grid().n(), o.grid().n()) * o.mass().powi(2);
    let rho = src.rho().values().map(|z| z.re);
    let rhs = |s: f64, p: &DVector<f64>, q: &DVector<f64>| (q.clone(), -(&a * p) + &rho * src.j(s));
    let n = o.grid().n();
    let (mut p, mut q) = (DVector::zeros(n), DVector::zeros(n));
    let dt = t / steps as f64;
    for i in 0..steps {
        let s = i as f64 * dt;
        let (k1p, k1q) = rhs(s, &p, &q);
        let (k2p, k2q) = rhs(s + dt / 2.0, &(&p + &k1p * (dt / 2.0)), &(&q + &k1q * (dt / 2.0)));
        let (k3p, k3q) = rhs(s + dt / 2.0, &(&p + &k2p * (dt / 2.0)), &(&q + &k2q * (dt / 2.0)));
        let (k4p, k4q) = rhs(s + dt, &(&p + &k3p * dt), &(&q + &k3q * dt));
        p += (k1p + &k2p * 2.0 + &k3p * 2.0 + k4p) * (dt / 6.0);
        q += (k1q + &k2q * 2.0 + &k3q * 2.0 + k4q) * (dt / 6.0);
    }
    (p, q)
}

#[test]
fn duhamel_term_matches_rk4() {
    let o = ops(128, 0.5);
    let src = gaussian_source(&o);
    let zero = LatticeFunction::zeros(o.grid());
    let s = classical_flow(&o, &zero, &zero, Some(&src), 5.0, &quad()).unwrap();
    let (p, q) = rk4(&o, &src, 5.0, 2000);
    let phi = s.phi.values().map(|z| z.re);
    let pi = s.pi.values().map(|z| z.re);
    assert!((&phi - &p).norm() <= 1e-6 * p.norm(), "{:e}", (&phi - &p).norm() / p.norm());
    assert!((&pi - &q).norm() <= 1e-6 * q.norm());
    assert!(s.phi.values().iter().all(|z| z.im.abs() < 1e-14));
}

#[test]
fn flow_time_derivative_is_momentum() {
    let o = ops(128, 0.5);
    let src = gaussian_source(&o);
    let phi0 = bump(o.grid(), -3.0);
    let pi0 = LatticeFunction::zeros(o.grid());
    let q = quad();
    let at = |t: f64| classical_flow(&o, &phi0, &pi0, Some(&src), t, &q).unwrap();
    let centre = at(1.2);
    let err = |dt: f64| {
        let d = (at(1.2 + dt).phi.values() - at(1.2 - dt).phi.values()) / Complex::from(2.0 * dt);
        (d - centre.pi.values()).norm() / centre.pi.values().norm()
    };
    let (e1, e2) = (err(0.02), err(0.01));
    assert!(e2 < e1 / 3.5 && e2 < 1e-4, "{e1:e} {e2:e}");
}

#[test]
fn u_blocks_identity_free_and_symplectic() {
    let o = ops(128, 0.5);
    let n = 128;
    assert!(build_u_blocks(&o, 0.0).sub(&BlockOperator::identity(n)).max_abs() < 1e-12);
    let free = ops(128, 0.0);
    assert!(build_u_blocks(&free, 2.7).sub(&build_u0_blocks(&free, 2.7)).max_abs() < 1e-9);
    let u = build_u_blocks(&o, 3.0);
    assert!(u.symplectic_defect() < 1e-8, "{:e}", u.symplectic_defect());
    assert!(u.conjugation_defect() < 1e-12);
}

#[test]
fn u_minus_plus_is_uniformly_hilbert_schmidt() {
    let coarse = ops(128, 0.5);
    let fine = ops(256, 0.5);
    let mut worst_change = 0.0f64;
    let mut peak = 0.0f64;
    for t in [0.5, 2.0, 5.0, 10.0, 20.0] {
        let a = hs_norm(&build_u_blocks(&coarse, t).mp);
        let b = hs_norm(&build_u_blocks(&fine, t).mp);
        peak = peak.max(b);
        worst_change = worst_change.max((a - b).abs() / b);
    }
    assert!(peak.is_finite() && peak < 1.0, "{peak}");
    assert!(worst_change < 0.1, "{worst_change}");
}

#[test]
fn source_orbit_properties() {
    let o = ops(128, 0.5);
    let src = gaussian_source(&o);
    let q = quad();
    let g0 = source_orbit(&o, &src, 0.0, &q).unwrap();
    assert!(g0.g.norm() == 0.0);
    let silent = src.with_rho(LatticeFunction::zeros(o.grid()));
    assert!(source_orbit(&o, &silent, 4.0, &q).unwrap().g.norm() == 0.0);
    let g5 = source_orbit(&o, &src, 5.0, &q).unwrap();
    assert!(g5.j.reality_defect() < 1e-14);
    let finer = VectorQuadrature::new(QuadratureSpec { panel_width: 0.25, tolerance: 1e-12, ..QuadratureSpec::default() });
    let g5f = source_orbit(&o, &src, 5.0, &finer).unwrap();
    assert!((g5.g.norm() - g5f.g.norm()).abs() <= 1e-8);
    // oracle: with zero data, g_t = −(1/√2)ω₀^{-1/2}π_t + (i/√2)ω₀^{1/2}φ_t
    let (p, m) = rk4(&o, &src, 5.0, 2000);
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let want = (o.omega0_mhalf() * m).map(|x| Complex::from(-s2 * x))
        + (o.omega0_half() * p).map(|x| Complex::new(0.0, s2 * x));
    assert!((g5.g.values() - &want).norm() <= 1e-6 * want.norm());
}

#[test]
fn doubled_space_algebra() {
    let o = ops(32, 0.3);
    let g = o.grid();
    let f = LatticeFunction::from_complex(g, |x| Complex::new((-x * x).exp(), x * (-x * x).exp()));
    let v = DoubledVector::new(f.clone(), bump(g, 1.0));
    assert_eq!(v.conjugate().conjugate(), v);
    assert_eq!(v.q().q(), v);
    assert!(DoubledVector::real_pair(&f).reality_defect() == 0.0);
    let u = build_u_blocks(&o, 1.1);
    let w = build_u_blocks(&o, 0.6);
    let lhs = u.mul(&w).adjoint();
    let rhs = w.adjoint().mul(&u.adjoint());
    assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    assert!(u.adjoint().adjoint().sub(&u).max_abs() == 0.0);
    // C U v = U C v
    let a = u.apply(&v).conjugate();
    let b = u.apply(&v.conjugate());
    assert!((a - b).norm() < 1e-12);
}

#[test]
fn single_precision_blocks() {
    let g = Grid::<f32>::new(32, 8.0, Boundary::Periodic).unwrap();
    let o = FieldOperators::new(g, &PotentialSpec::gaussian(0.5f32, 1.0), 1.0).unwrap();
    let u = build_u_blocks(&o, 1.0f32);
    assert!(u.symplectic_defect() < 1e-4);
}

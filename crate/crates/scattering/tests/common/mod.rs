#![allow(dead_code)]
use std::sync::OnceLock;

use kgscat_core::*;
use kgscat_dynamics::*;
use kgscat_scattering::*;

pub fn grid(n: usize) -> Grid64 {
    Grid::new(n, 20.0, Boundary::Periodic).unwrap()
}

pub fn ops(n: usize, amp: f64) -> FieldOperators64 {
    let v = if amp == 0.0 { PotentialSpec::Zero } else { PotentialSpec::gaussian(amp, 1.0) };
    FieldOperators::new(grid(n), &v, 1.0).unwrap()
}

pub fn quad() -> VectorQuadrature64 {
    VectorQuadrature::new(QuadratureSpec::default())
}

pub fn rho(g: &Grid64) -> LatticeFunction64 {
    LatticeFunction::from_real(g, |x| (-x * x / 2.0).exp())
}

pub fn gaussian_source(o: &FieldOperators64) -> SourceSpec64 {
    SourceSpec::new(o.grid(), TemporalProfile::Gaussian { a: 1.0 }, rho(o.grid()), None).unwrap()
}

pub struct Fixture {
    pub ops: FieldOperators64,
    pub ctx: ScatteringContext,
}

fn build(amp: f64) -> Fixture {
    let o = ops(256, amp);
    let src = gaussian_source(&o);
    let ctx = ScatteringContext::build(&o, Some(&src), &ScatteringConfig::default(), &quad()).unwrap();
    Fixture { ops: o, ctx }
}

pub fn free() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| build(0.0))
}

pub fn interacting() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| build(0.5))
}

/// Dawson's integral `e^{-x²}∫_0^x e^{t²}dt` by composite Simpson on `e^{t²-x²}`.
pub fn dawson(x: f64) -> f64 {
    let m = 20_000;
    let h = x / m as f64;
    let f = |t: f64| (t * t - x * x).exp();
    let mut s = f(0.0) + f(x);
    for i in 1..m {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    s * h / 3.0
}

#![allow(dead_code)]
use std::sync::OnceLock;

use kgscat_core::*;
use kgscat_dynamics::*;
use kgscat_scattering::*;
use kgscat_vacuum::*;

pub fn ops(amp: f64) -> FieldOperators64 {
    let g = Grid::new(256, 20.0, Boundary::Periodic).unwrap();
    let v = if amp == 0.0 { PotentialSpec::Zero } else { PotentialSpec::gaussian(amp, 1.0) };
    FieldOperators::new(g, &v, 1.0).unwrap()
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
    pub data: VacuumData,
}

fn build(amp: f64) -> Fixture {
    let o = ops(amp);
    let src = gaussian_source(&o);
    let ctx = ScatteringContext::build(&o, Some(&src), &ScatteringConfig::default(), &quad()).unwrap();
    let data = VacuumData::new(&o, ctx, src).unwrap();
    Fixture { ops: o, data }
}

pub fn free() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| build(0.0))
}

pub fn interacting() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| build(0.5))
}

pub fn packet(g: &Grid64, x0: f64, k0: f64) -> LatticeFunction64 {
    gaussian_packet(g, x0, k0, 2.0)
}

pub fn rel(a: num_complex::Complex<f64>, b: num_complex::Complex<f64>) -> f64 {
    (a - b).norm() / b.norm()
}

#![allow(dead_code)]
use std::sync::OnceLock;

use kgscat_core::*;
use kgscat_dynamics::*;
use kgscat_inverse::*;
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

pub fn rho(g: &Grid64, width: f64) -> LatticeFunction64 {
    LatticeFunction::from_real(g, |x| (-x * x / (2.0 * width * width)).exp())
}

pub struct Fixture {
    pub ops: FieldOperators64,
    pub data: VacuumData,
}

impl Fixture {
    pub fn grid(&self) -> &Grid64 {
        self.ops.grid()
    }

    pub fn rho(&self) -> &LatticeFunction64 {
        self.data.source.rho()
    }

    pub fn profile(&self) -> &TemporalProfile64 {
        self.data.source.profile()
    }

    pub fn samples(&self) -> ZSamples {
        ZSamples::new(self.grid().momenta(), self.data.z().iter().copied().collect()).unwrap()
    }

    pub fn with_profile(&self, p: TemporalProfile64) -> Fixture {
        let o = ops(if self.ops.has_potential() { 0.5 } else { 0.0 });
        let src = SourceSpec::new(o.grid(), p, self.rho().clone(), None).unwrap();
        let ctx = self.data.context.with_source(&o, &src, &quad()).unwrap();
        Fixture { data: VacuumData::new(&o, ctx, src).unwrap(), ops: o }
    }
}

fn build(amp: f64) -> Fixture {
    let o = ops(amp);
    let src = SourceSpec::new(o.grid(), TemporalProfile::Gaussian { a: 1.0 }, rho(o.grid(), 1.0), None).unwrap();
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

pub fn gaussian_hat(tau: f64) -> num_complex::Complex<f64> {
    num_complex::Complex::from((-tau * tau / 4.0).exp() / 2f64.sqrt())
}

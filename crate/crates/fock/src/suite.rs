use std::sync::Arc;

use kgscat_core::{lit, Real};
use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{exp_i, operator_matrix, FockError, FockSpace, FockState};

/// One line of the identity suite.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRow {
    pub identity: &'static str,
    pub parameters: String,
    pub residual: f64,
}

/// Seeded source of test vectors.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn z<T: Real>(&mut self) -> Complex<T> {
        Complex::new(lit(self.rng.random_range(-1.0..1.0)), lit(self.rng.random_range(-1.0..1.0)))
    }

    /// Unit vector in `ℂᵈ`.
    pub fn vector<T: Real>(&mut self, d: usize) -> Vec<Complex<T>> {
        let v: Vec<Complex<T>> = (0..d).map(|_| self.z()).collect();
        let n = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        v.into_iter().map(|z| z / n).collect()
    }

    /// Unit state supported on sectors `0..=top`.
    pub fn state<T: Real>(&mut self, space: &Arc<FockSpace>, top: usize) -> FockState<T> {
        let mut amps = DVector::zeros(space.dim());
        for k in 0..=top.min(space.n_max()) {
            for i in space.sector(k) {
                amps[i] = self.z();
            }
        }
        let n = amps.norm();
        FockState::from_amps(space, amps / Complex::new(n, T::zero()))
    }

    /// Random unitary from the QR factor of a complex Gaussian-ish matrix.
    pub fn unitary<T: Real>(&mut self, d: usize) -> DMatrix<Complex<T>> {
        let m = DMatrix::from_fn(d, d, |_, _| self.z::<T>());
        m.qr().q()
    }

    /// Random Hermitian matrix.
    pub fn hermitian<T: Real>(&mut self, d: usize) -> DMatrix<Complex<T>> {
        let m = DMatrix::from_fn(d, d, |_, _| self.z::<T>());
        (&m + m.adjoint()) * Complex::new(lit::<T>(0.5), T::zero())
    }
}

fn dot<T: Real>(f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
    f.iter().zip(g).map(|(a, b)| a.conj() * b).fold(Complex::new(T::zero(), T::zero()), |s, z| s + z)
}

fn res<T: Real>(v: &FockState<T>) -> f64 {
    v.norm().to_f64().unwrap_or(f64::NAN)
}

fn real<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The CCR-layer identities on seeded vectors and states two sectors below the cutoff.
pub fn identity_suite<T: Real>(d: usize, n_max: usize, seed: u64) -> Result<Vec<IdentityRow>, FockError> {
    let space = FockSpace::new(d, n_max)?;
    let mut s = Sampler::new(seed);
    let top = n_max.saturating_sub(2);
    let params = format!("d={d} N_max={n_max} seed={seed}");
    let (f, g) = (s.vector::<T>(d), s.vector::<T>(d));
    let psi = s.state::<T>(&space, top);
    let phi = s.state::<T>(&space, top);
    let mut rows = Vec::new();
    let mut push = |identity, residual: f64| rows.push(IdentityRow { identity, parameters: params.clone(), residual });

    let ccr = psi.create(&g).annihilate(&f).sub(&psi.annihilate(&f).create(&g)).sub(&psi.scale(dot(&f, &g)));
    push("[c(f),c*(g)] = (f,g)", res(&ccr));
    push("[c(f),c(g)] = 0", res(&psi.annihilate(&g).annihilate(&f).sub(&psi.annihilate(&f).annihilate(&g))));
    push("[c*(f),c*(g)] = 0", res(&psi.create(&g).create(&f).sub(&psi.create(&f).create(&g))));

    let nf2 = real(dot(&f, &f).re);
    let lhs = real(psi.create(&f).norm().powi(2));
    let c2 = real(psi.annihilate(&f).norm().powi(2));
    let p2 = real(psi.norm().powi(2));
    push("|c*(f)Psi|^2 = |f|^2|Psi|^2 + |c(f)Psi|^2", (lhs - nf2 * p2 - c2).abs());
    let i_f: Vec<_> = f.iter().map(|z| z * Complex::new(T::zero(), T::one())).collect();
    let t1 = real(psi.segal(&f).norm().powi(2));
    let t2 = real(psi.segal(&i_f).norm().powi(2));
    push("|c*(f)Psi|^2 = (|tau(f)Psi|^2 + |tau(if)Psi|^2 + |f|^2|Psi|^2)/2", (lhs - 0.5 * (t1 + t2 + nf2 * p2)).abs());
    let c_from_tau = psi.segal(&f).add(&psi.segal(&i_f).scale(Complex::new(T::zero(), T::one())));
    push("c(f) = (tau(f) + i tau(if))/sqrt2", res(&c_from_tau.scale(Complex::new(lit(std::f64::consts::FRAC_1_SQRT_2), T::zero())).sub(&psi.annihilate(&f))));

    let (up, um, vp, vm) = (s.vector::<T>(d), s.vector::<T>(d), s.vector::<T>(d), s.vector::<T>(d));
    let comm = psi.psi_adjoint(&vp, &vm).psi(&up, &um).sub(&psi.psi(&up, &um).psi_adjoint(&vp, &vm));
    let uqv = dot(&up, &vp) - dot(&um, &vm);
    push("[psi(u),psi(v)*] = (u,Qv)", res(&comm.sub(&psi.scale(uqv))));
    let vbar: Vec<_> = vp.iter().map(|z| z.conj()).collect();
    let sq2 = Complex::new(lit::<T>(std::f64::consts::SQRT_2), T::zero());
    push("psi([f;conj f]) = sqrt2 tau(f)", res(&psi.psi(&vp, &vbar).sub(&psi.segal(&vp).scale(sq2))));
    let sym = phi.inner(&psi.psi(&vp, &vbar)) - phi.psi(&vp, &vbar).inner(&psi);
    push("(Phi, psi(v)Psi) = (psi(v)Phi, Psi) on H_C", real(sym.modulus()));

    let id = DMatrix::<Complex<T>>::identity(d, d);
    push("Gamma(1) = 1", res(&psi.gamma(&id)?.sub(&psi)));
    let mut num_err: f64 = 0.0;
    for n in 0..=n_max {
        for k in space.sector(n) {
            let mut e = FockState::<T>::zeros(&space);
            e.amps[k] = Complex::new(T::one(), T::zero());
            num_err = num_err.max(res(&e.number().sub(&e.scale(Complex::new(lit(n as f64), T::zero())))));
        }
    }
    push("dGamma(1) = N", num_err);
    let u = s.unitary::<T>(d);
    let uf: Vec<_> = (&u * DVector::from_column_slice(&f)).iter().copied().collect();
    let lhs = psi.gamma(&u.adjoint())?.create(&f).gamma(&u)?;
    push("Gamma(U) c*(f) Gamma(U)* = c*(Uf)", res(&lhs.sub(&psi.create(&uf))));
    let lhs = psi.gamma(&u.adjoint())?.annihilate(&f).gamma(&u)?;
    push("Gamma(U) c(f) Gamma(U)* = c(Uf)", res(&lhs.sub(&psi.annihilate(&uf))));
    push("[Gamma(U), N] = 0", res(&psi.number().gamma(&u)?.sub(&psi.gamma(&u)?.number())));

    let h = s.hermitian::<T>(d);
    let t: T = lit(0.7);
    let e = exp_i(&h, t);
    let gam = operator_matrix(&space, |x| x.gamma(&e).expect("unitary"));
    let dg = operator_matrix(&space, |x| x.dgamma(&h));
    let diff = gam - exp_i(&dg, t);
    push("Gamma(e^{itT}) = e^{it dGamma(T)}", real(diff.iter().map(|z| z.modulus()).fold(T::zero(), |a, b| a.max(b))));

    // kernel of all c(e_i): stack the annihilators and count null singular values
    let dim = space.dim();
    let mut stacked = DMatrix::<Complex<T>>::zeros(d * dim, dim);
    for i in 0..d {
        let ci = operator_matrix(&space, |x| x.annihilate_mode(i));
        stacked.view_mut((i * dim, 0), (dim, dim)).copy_from(&ci);
    }
    let sv = stacked.singular_values();
    let nullity = sv.iter().filter(|&&x| x < lit(1e-10)).count();
    push("ker c(e_i) = span(Omega)", (nullity as f64 - 1.0).abs());

    Ok(rows)
}

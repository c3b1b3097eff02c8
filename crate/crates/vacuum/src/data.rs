use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use kgscat_core::{CVec, FieldOperators64, Grid64, LatticeFunction64, SymOperator64};
use kgscat_dynamics::{DoubledVector64, SourceSpec64};
use kgscat_scattering::ScatteringContext;
use num_complex::Complex;

use crate::{VacuumError, CONVENTIONS};

const I: Complex<f64> = Complex::new(0.0, 1.0);

/// `(X[f], Y[f], Z₊[f], Z₋[f])`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Xyz {
    pub x: Complex<f64>,
    pub y: Complex<f64>,
    pub z_plus: Complex<f64>,
    pub z_minus: Complex<f64>,
}

/// One identity of the dual-path comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPathEntry {
    pub identity: &'static str,
    /// Value through `F → X, Y → Z±`.
    pub chain: Complex<f64>,
    /// Closed form in terms of `g_∞` and `w₋`.
    pub closed: Complex<f64>,
    /// `|chain − closed|` over the Cauchy–Schwarz bound of the closed form
    /// (`2√2‖g_∞‖‖f‖` for the first two, `‖g_∞‖‖f‖` for `Z[f]`); finite when the closed form vanishes.
    pub residual: f64,
    /// `|chain − closed| / |closed|`.
    pub relative: f64,
}

/// Vacuum expectation data for one potential and one source.
#[derive(Clone, Debug)]
pub struct VacuumData {
    pub context: ScatteringContext,
    pub source: SourceSpec64,
    grid: Grid64,
    omega0: SymOperator64,
    /// `A = W₊j₊ − W₋j₋` with `j± = [g±; ḡ±]`.
    a: DoubledVector64,
    /// `(QW₊)*A`, so that `F(t,f) = i((QW₊)*A, Cv_t)`.
    pulled: DoubledVector64,
    /// `g_∞ = w₊g₊ − w₋g₋`, the one the derivation of the chain produces.
    g_chain: LatticeFunction64,
    /// `g_∞` from `−(1/√2)∫ω^{-1/2}e^{isω}J_s ds`.
    g_direct: LatticeFunction64,
    z: CVec<f64>,
}

impl VacuumData {
    pub fn new(ops: &FieldOperators64, context: ScatteringContext, source: SourceSpec64) -> Result<Self, VacuumError> {
        let asym = context.source.as_ref().ok_or(VacuumError::NoSource)?;
        let jp = DoubledVector64::real_pair(&asym.g_plus);
        let jm = DoubledVector64::real_pair(&asym.g_minus);
        let a = context.w_blocks_plus.apply(&jp) - context.w_blocks_minus.apply(&jm);
        let pulled = context.w_blocks_plus.q_mul().adjoint().apply(&a);
        let g_chain = asym.g_infinity.from_wave_operators.clone();
        let g_direct = asym.g_infinity.direct.clone();
        let mut data = Self {
            grid: ops.grid().clone(),
            omega0: ops.omega0().clone(),
            context,
            source,
            a,
            pulled,
            g_chain,
            g_direct,
            z: CVec::zeros(0),
        };
        data.z = data.closed_form_z(&data.g_direct.clone());
        Ok(data)
    }

    pub fn grid(&self) -> &Grid64 {
        &self.grid
    }

    pub fn a(&self) -> &DoubledVector64 {
        &self.a
    }

    /// `g_∞` entering the closed forms of the chain.
    pub fn g_infinity_chain(&self) -> &LatticeFunction64 {
        &self.g_chain
    }

    pub fn g_infinity_direct(&self) -> &LatticeFunction64 {
        &self.g_direct
    }

    fn pair(&self, v: &DoubledVector64) -> Complex<f64> {
        I * self.pulled.inner(v)
    }

    /// `F(t, f) = i(A, QW₊Cv_t)`, `Cv_t = [e^{itω₀}ω₀^{-1/2}f; e^{-itω₀}ω₀^{-1/2}f]/√2`.
    pub fn response(&self, t: f64, f: &LatticeFunction64) -> Complex<f64> {
        let branch = |s: f64| {
            let v = self.omega0.apply_function(
                |e| Complex::from_polar(FRAC_1_SQRT_2 / e.sqrt(), s * t * e),
                f.values(),
            );
            f.with_values(v)
        };
        self.pair(&DoubledVector64::new(branch(1.0), branch(-1.0)))
    }

    pub fn response_trace(&self, f: &LatticeFunction64, times: &[f64]) -> Vec<(f64, Complex<f64>)> {
        times.iter().map(|&t| (t, self.response(t, f))).collect()
    }

    /// `X[f] = d/dt F(t, ω₀^{-1/2}f)` at `t = 0`. The derivative of `Cv_t` there is `i[f; −f]/√2`.
    pub fn x(&self, f: &LatticeFunction64) -> Complex<f64> {
        let c = I * FRAC_1_SQRT_2;
        self.pair(&DoubledVector64::new(f.with_values(f.values() * c), f.with_values(f.values() * -c)))
    }

    /// Central difference of `F(·, ω₀^{-1/2}f)`; only used to cross-check [`Self::x`].
    pub fn x_finite_difference(&self, f: &LatticeFunction64, dt: f64) -> Complex<f64> {
        let g = self.omega0_power(f, -0.5);
        (self.response(dt, &g) - self.response(-dt, &g)) / (2.0 * dt)
    }

    /// `Y[f] = F(0, ω₀^{1/2}f)`.
    pub fn y(&self, f: &LatticeFunction64) -> Complex<f64> {
        self.response(0.0, &self.omega0_power(f, 0.5))
    }

    pub fn xyz(&self, f: &LatticeFunction64) -> Xyz {
        let (x, y) = (self.x(f), self.y(f));
        Xyz { x, y, z_plus: x - I * y, z_minus: x + I * y }
    }

    pub fn z_plus(&self, f: &LatticeFunction64) -> Complex<f64> {
        self.xyz(f).z_plus
    }

    pub fn z_minus(&self, f: &LatticeFunction64) -> Complex<f64> {
        self.xyz(f).z_minus
    }

    /// `Z[f, g] = Z₊[f] − Z₋[g]`.
    pub fn z_pair(&self, f: &LatticeFunction64, g: &LatticeFunction64) -> Complex<f64> {
        self.z_plus(f) - self.z_minus(g)
    }

    /// `Z[f] = (Z[f, Sf] + Z[−f, Sf]) / 2√2`, entirely from `F`.
    pub fn z_chain(&self, f: &LatticeFunction64) -> Complex<f64> {
        let sf = self.scattered(f);
        let neg = f.with_values(-f.values());
        (self.z_pair(f, &sf) + self.z_pair(&neg, &sf)) / (2.0 * SQRT_2)
    }

    /// `Z[f] = (w₋*g_∞, f)`.
    pub fn z_closed(&self, f: &LatticeFunction64) -> Complex<f64> {
        let wf = self.context.w_minus.apply(f);
        self.g_chain.inner(&wf)
    }

    /// Both paths for the three identities, in order:
    /// `Z[f, Sf] = −2√2 i(Im g_∞, w₋f)`, `Z[−f, Sf] = 2√2(Re g_∞, w₋f)`, `Z[f] = (w₋*g_∞, f)`.
    pub fn dual_path(&self, f: &LatticeFunction64) -> Vec<DualPathEntry> {
        let sf = self.scattered(f);
        let neg = f.with_values(-f.values());
        let wf = self.context.w_minus.apply(f);
        let bound = self.g_chain.norm() * f.norm();
        let entry = |identity, chain: Complex<f64>, closed: Complex<f64>, b: f64| {
            let d = (chain - closed).norm();
            DualPathEntry {
                identity,
                chain,
                closed,
                residual: if b > 0.0 { d / b } else { d },
                relative: if closed.norm() > 0.0 { d / closed.norm() } else if d == 0.0 { 0.0 } else { f64::INFINITY },
            }
        };
        let first = self.z_pair(f, &sf);
        let second = self.z_pair(&neg, &sf);
        vec![
            entry("Z[f,Sf] = -2sqrt2 i (Im g_inf, w_- f)", first, -2.0 * SQRT_2 * I * self.g_chain.imag_part().inner(&wf), 2.0 * SQRT_2 * bound),
            entry("Z[-f,Sf] = 2sqrt2 (Re g_inf, w_- f)", second, 2.0 * SQRT_2 * self.g_chain.real_part().inner(&wf), 2.0 * SQRT_2 * bound),
            entry("Z[f] = (w_-^* g_inf, f)", (first + second) / (2.0 * SQRT_2), self.g_chain.inner(&wf), bound),
        ]
    }

    /// [`Self::dual_path`] as a check: the first identity above `threshold` is the error.
    pub fn check_dual_path(&self, f: &LatticeFunction64, threshold: f64) -> Result<Vec<DualPathEntry>, VacuumError> {
        let entries = self.dual_path(f);
        if let Some(bad) = entries.iter().find(|e| !(e.residual <= threshold)) {
            return Err(VacuumError::Mismatch { identity: bad.identity.into(), residual: bad.residual, threshold });
        }
        Ok(entries)
    }

    /// Closed-form `z(k) = −√2 ℱ₀[conj(w₋*g)](k)` on the lattice momenta.
    pub fn closed_form_z(&self, g: &LatticeFunction64) -> CVec<f64> {
        let pulled = self.context.w_minus.matrix.adjoint() * g.values();
        let c = CONVENTIONS.lambda_prefactor * CONVENTIONS.kappa;
        self.context.fourier.forward(&pulled.map(|v| v.conj())) * Complex::from(c)
    }

    /// `z` on the lattice momenta from the direct `g_∞`.
    pub fn z(&self) -> &CVec<f64> {
        &self.z
    }

    /// `z` from `w₊g₊ − w₋g₋`, the referee for the `z_λ` limit.
    pub fn z_chain_reference(&self) -> CVec<f64> {
        self.closed_form_z(&self.g_chain)
    }

    pub fn momenta(&self) -> &[f64] {
        self.context.fourier.momenta()
    }

    fn scattered(&self, f: &LatticeFunction64) -> LatticeFunction64 {
        f.with_values(&self.context.s * f.values())
    }

    fn omega0_power(&self, f: &LatticeFunction64, p: f64) -> LatticeFunction64 {
        f.with_values(self.omega0.apply_function(|e| Complex::from(e.powf(p)), f.values()))
    }
}

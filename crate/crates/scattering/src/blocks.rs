use kgscat_core::linalg::{complex_mul, complex_mul_real, real_mul_complex, real_mul_vec};
use kgscat_core::{operator_norm, CMat, FieldOperators64, LatticeFunction64, SymOperator64};
use kgscat_dynamics::{build_u0_blocks, build_u_blocks, BlockOperator64, DoubledVector64};
use nalgebra::DMatrix;
use num_complex::Complex;

use crate::{Direction, Packet, ScatteringError};

/// `(W±)₊₊ = ½(ω₀^{-1/2}wω₀^{1/2} + ω₀^{1/2}wω₀^{-1/2})`, `(W±)₋₊` the same with a minus sign,
/// and the remaining blocks by conjugation.
pub fn build_w_blocks(ops: &FieldOperators64, w: &CMat<f64>) -> BlockOperator64 {
    w_blocks_with(ops.omega0_half(), ops.omega0_mhalf(), w)
}

/// [`build_w_blocks`] from explicit `ω₀^{1/2}`, `ω₀^{-1/2}`.
pub fn w_blocks_with(half: &DMatrix<f64>, mhalf: &DMatrix<f64>, w: &CMat<f64>) -> BlockOperator64 {
    let a = complex_mul_real(&real_mul_complex(mhalf, w), half);
    let b = complex_mul_real(&real_mul_complex(half, w), mhalf);
    let c = Complex::from(0.5);
    BlockOperator64::from_pair((&a + &b) * c, (&a - &b) * c)
}

/// `(W₊)₊₊*(W₋)₊₊ − S − ¼w₊*[(ω^{-1/2}ω₀ω^{-1/2} − 1) + (ω^{1/2}ω₀^{-1}ω^{1/2} − 1)]w₋`
/// for any pair of positive operators `ω₀`, `ω`.
pub fn s_intertwining_difference(
    omega0: &SymOperator64,
    omega: &SymOperator64,
    w_plus: &CMat<f64>,
    w_minus: &CMat<f64>,
    s: &CMat<f64>,
) -> CMat<f64> {
    let n = omega0.n();
    let (h0, mh0) = (omega0.function_matrix(f64::sqrt), omega0.function_matrix(|x| 1.0 / x.sqrt()));
    let (h, mh) = (omega.function_matrix(f64::sqrt), omega.function_matrix(|x| 1.0 / x.sqrt()));
    let inv0 = omega0.function_matrix(|x| 1.0 / x);
    let id = DMatrix::<f64>::identity(n, n);
    let wp = w_blocks_with(&h0, &mh0, w_plus);
    let wm = w_blocks_with(&h0, &mh0, w_minus);
    let lhs = complex_mul(&wp.pp.adjoint(), &wm.pp);
    let inner = (&mh * omega0.matrix() * &mh - &id) + (&h * inv0 * &h - &id);
    let corr = complex_mul(&w_plus.adjoint(), &real_mul_complex(&inner, w_minus)) * Complex::from(0.25);
    lhs - s - corr
}

/// Residual of `(W₊)₊₊*(W₋)₊₊ = S + ¼w₊*[…]w₋`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResidual {
    /// Operator norm of the difference.
    pub operator: f64,
    /// `(k₀, ‖Δ f‖/‖f‖)` on packets.
    pub packets: Vec<(f64, f64)>,
}

impl IdentityResidual {
    pub fn worst_packet(&self) -> f64 {
        self.packets.iter().map(|p| p.1).fold(0.0, f64::max)
    }
}

pub fn s_intertwining_residual(
    ops: &FieldOperators64,
    w_plus: &CMat<f64>,
    w_minus: &CMat<f64>,
    s: &CMat<f64>,
    packets: &[Packet],
) -> IdentityResidual {
    let diff = s_intertwining_difference(ops.omega0(), ops.omega(), w_plus, w_minus, s);
    let packets = packets
        .iter()
        .map(|p| (p.k0, ops.grid().norm(&(&diff * p.f.values())) / p.f.norm()))
        .collect();
    IdentityResidual { operator: operator_norm(&diff), packets }
}

/// `‖U(T)*U₀(T)v − W±v‖` at `T = ±t` for each `t`.
pub fn dynamic_w_limit(
    ops: &FieldOperators64,
    w_blocks: &BlockOperator64,
    direction: Direction,
    v: &DoubledVector64,
    times: &[f64],
) -> Vec<f64> {
    let target = w_blocks.apply(v);
    times
        .iter()
        .map(|&t| {
            let t = direction.sign() * t;
            let u = build_u_blocks(ops, t).adjoint();
            let u0v = build_u0_blocks(ops, t).apply(v);
            (u.apply(&u0v) - target.clone()).norm()
        })
        .collect()
}

/// Exponent triple `(a, b, c)` of `I_{(a,b,c)}(s,t) = ω₀^a e^{isω} ω^b e^{itω₀} ω₀^c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponents {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Exponents {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, ScatteringError> {
        let allowed = |x: f64| [-1.0, -0.5, 0.0, 0.5, 1.0].contains(&x);
        if !(allowed(a) && allowed(b) && allowed(c)) || (a + b + c).abs() > 1e-15 {
            return Err(ScatteringError::InvalidExponents(a, b, c));
        }
        Ok(Self { a, b, c })
    }

    /// The triple with the same outer powers whose same-sign terms cancel against this one.
    pub fn partner(&self) -> Option<Self> {
        const PAIRS: [((f64, f64, f64), (f64, f64, f64)); 4] = [
            ((0.5, 0.0, -0.5), (0.5, -1.0, 0.5)),
            ((0.5, -1.0, 0.5), (0.5, 0.0, -0.5)),
            ((-0.5, 0.0, 0.5), (-0.5, 1.0, -0.5)),
            ((-0.5, 1.0, -0.5), (-0.5, 0.0, 0.5)),
        ];
        let p = PAIRS.iter().find(|(k, _)| *k == (self.a, self.b, self.c))?.1;
        Some(Self { a: p.0, b: p.1, c: p.2 })
    }
}

/// `I_{(a,b,c)}(s,t) f`.
pub fn i_abc_apply(ops: &FieldOperators64, e: Exponents, s: f64, t: f64, f: &LatticeFunction64) -> LatticeFunction64 {
    let pow = |x: f64, p: f64| if p == 0.0 { 1.0 } else { x.powf(p) };
    let o0 = ops.omega0();
    let o = ops.omega();
    let v = o0.apply_function(|x| Complex::new(pow(x, e.c) * (t * x).cos(), pow(x, e.c) * (t * x).sin()), f.values());
    let v = o.apply_function(|x| Complex::new(pow(x, e.b) * (s * x).cos(), pow(x, e.b) * (s * x).sin()), &v);
    let v = o0.apply_function(|x| Complex::from(pow(x, e.a)), &v);
    f.with_values(v)
}

/// Behaviour of `I_{(a,b,c)}` along `(σ_s T, σ_t T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IabcReport {
    pub exponents: Exponents,
    pub s_sign: f64,
    pub t_sign: f64,
    pub times: Vec<f64>,
    /// Opposite signs: `‖I f − ω₀^a w ω₀^{b+c} f‖`. Same signs: `‖I f‖`.
    pub strong: Vec<f64>,
    /// Same signs: `‖(I − I_partner) f‖`; empty otherwise.
    pub partner: Vec<f64>,
    /// Same signs: `|(g, I f)|` for the probe `g`; empty otherwise.
    pub weak: Vec<f64>,
}

#[allow(clippy::too_many_arguments)]
pub fn i_abc_limits(
    ops: &FieldOperators64,
    w_plus: &CMat<f64>,
    w_minus: &CMat<f64>,
    e: Exponents,
    s_sign: f64,
    t_sign: f64,
    times: &[f64],
    f: &LatticeFunction64,
    probe: &LatticeFunction64,
) -> IabcReport {
    let opposite = s_sign * t_sign < 0.0;
    let target = if opposite {
        let w = if s_sign > 0.0 { w_plus } else { w_minus };
        let (alpha, gamma) = (e.a, e.b + e.c);
        let inner = real_mul_vec(&ops.omega0_pow(gamma), f.values());
        Some(real_mul_vec(&ops.omega0_pow(alpha), &(w * inner)))
    } else {
        None
    };
    let mut strong = Vec::new();
    let mut partner = Vec::new();
    let mut weak = Vec::new();
    for &t in times {
        let v = i_abc_apply(ops, e, s_sign * t, t_sign * t, f);
        match &target {
            Some(tg) => strong.push(ops.grid().norm(&(v.values() - tg))),
            None => {
                strong.push(v.norm());
                weak.push(probe.inner(&v).norm());
                if let Some(p) = e.partner() {
                    let u = i_abc_apply(ops, p, s_sign * t, t_sign * t, f);
                    partner.push(ops.grid().norm(&(v.values() - u.values())));
                }
            }
        }
    }
    IabcReport { exponents: e, s_sign, t_sign, times: times.to_vec(), strong, partner, weak }
}

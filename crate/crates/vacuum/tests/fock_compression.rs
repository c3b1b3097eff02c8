mod common;

use common::*;
use kgscat_core::*;
use kgscat_dynamics::*;
use kgscat_fock::*;
use kgscat_vacuum::*;
use num_complex::Complex;

// F(t, f) = i(A, QW₊Cv_t) is the expectation of ψ(W₊v_t) in the coherent state with α = −iA₊.
// Everything lives in the span of A₊ and the field arguments, so a six-mode Fock space suffices.

fn gram_schmidt(vs: &[LatticeFunction64]) -> Vec<LatticeFunction64> {
    let mut out: Vec<LatticeFunction64> = Vec::new();
    for v in vs {
        let mut w = v.values().clone();
        for b in &out {
            let c = b.inner(&v.with_values(w.clone()));
            w -= b.values() * c;
        }
        let u = v.with_values(w);
        if u.norm() > 1e-10 {
            out.push(u.normalized());
        }
    }
    out
}

fn coords(basis: &[LatticeFunction64], v: &LatticeFunction64) -> Vec<Complex<f64>> {
    basis.iter().map(|b| b.inner(v)).collect()
}

#[test]
fn response_matches_six_mode_coherent_state() {
    let base = interacting();
    let o = &base.ops;
    let g = o.grid();
    let src = base.data.source.with_rho(LatticeFunction::from_real(g, |x| 0.3 * (-x * x / 2.0).exp()));
    let ctx = base.data.context.with_source(o, &src, &quad()).unwrap();
    let d = VacuumData::new(o, ctx, src).unwrap();
    let f = packet(g, 1.0, 1.5);
    let times = [0.0, 1.3];

    // W₊v_t with v_t = [e^{-itω₀}ω₀^{-1/2}f̄; e^{itω₀}ω₀^{-1/2}f̄]/√2 = C(Cv_t)
    let fields: Vec<DoubledVector64> = times
        .iter()
        .map(|&t| {
            let branch = |s: f64| {
                let v = o.omega0().apply_function(
                    |e| Complex::from_polar(std::f64::consts::FRAC_1_SQRT_2 / e.sqrt(), s * t * e),
                    f.values(),
                );
                f.with_values(v)
            };
            let cv = DoubledVector64::new(branch(1.0), branch(-1.0));
            d.context.w_blocks_plus.apply(&cv.conjugate())
        })
        .collect();
    let alpha = d.a().plus.with_values(d.a().plus.values() * Complex::new(0.0, -1.0));
    let mut span = vec![alpha.clone()];
    for y in &fields {
        span.push(y.plus.clone());
        span.push(y.minus.conj());
    }
    span.push(d.a().plus.with_values(o.omega0().apply(d.a().plus.values())));
    let basis = gram_schmidt(&span);
    assert_eq!(basis.len(), 6);

    let space = FockSpace::new(6, 8).unwrap();
    let coh = coherent_state(&space, &coords(&basis, &alpha)).unwrap();
    println!("|alpha| = {:.3}, truncated norm {:.1e}", alpha.norm(), coh.dropped);
    for (y, &t) in fields.iter().zip(times.iter()) {
        // ψ(y) = c(y₊) + c*(ȳ₋)
        let applied = coh.annihilate(&coords(&basis, &y.plus)).add(&coh.create(&coords(&basis, &y.minus.conj())));
        let fock = coh.inner(&applied);
        let closed = d.response(t, &f);
        let r = rel(fock, closed);
        println!("t = {t}: Fock {fock:.6e}, closed form {closed:.6e}, rel {r:.1e}");
        assert!(r < 1e-3);
    }
}

use std::time::Instant;

use kgscat_core::*;
use kgscat_dynamics::*;
use kgscat_fock::*;
use nalgebra::DMatrix;
use num_complex::Complex;

fn cz(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn basis_dimensions() {
    for (d, n) in [(1, 5), (2, 6), (3, 8), (6, 4)] {
        let s = FockSpace::new(d, n).unwrap();
        // Σ_{k≤N} C(k+d−1, k) = C(N+d, N)
        assert_eq!(s.dim(), binom(n + d, n));
        for k in 0..=n {
            assert_eq!(s.sector(k).len(), binom(k + d - 1, k));
        }
    }
    assert!(matches!(FockSpace::new(9, 2), Err(FockError::TooLarge { .. })));
    assert!(matches!(FockSpace::new(2, 13), Err(FockError::TooLarge { .. })));
}

#[test]
fn one_particle_states() {
    let s = FockSpace::new(3, 4).unwrap();
    let omega = FockState64::vacuum(&s);
    let e1 = [cz(1.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0)];
    let one = omega.create(&e1);
    let want = FockState64::basis(&s, &[1, 0, 0]).unwrap();
    assert!(one.sub(&want).norm() < 1e-15);
    let f = [cz(0.3, -0.4), cz(1.2, 0.0), cz(0.0, 0.7)];
    let nf = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    assert!((omega.create(&f).norm() - nf).abs() < 1e-14);
    assert_eq!(omega.annihilate(&f).norm(), 0.0);
}

#[test]
fn annihilation_is_antilinear() {
    let s = FockSpace::new(2, 4).unwrap();
    let psi = Sampler::new(3).state::<f64>(&s, 2);
    let f = [cz(0.5, 0.1), cz(-0.2, 0.9)];
    let i = cz(0.0, 1.0);
    let f_i: Vec<_> = f.iter().map(|z| z * i).collect();
    assert!(psi.annihilate(&f_i).sub(&psi.annihilate(&f).scale(-i)).norm() < 1e-15);
    assert!(psi.create(&f_i).sub(&psi.create(&f).scale(i)).norm() < 1e-15);
}

#[test]
fn truncation_loss_is_reported() {
    let s = FockSpace::new(2, 3).unwrap();
    let top = FockState64::basis(&s, &[3, 0]).unwrap();
    let up = top.create_mode(0);
    assert_eq!(up.norm(), 0.0);
    assert!((up.dropped - 2.0).abs() < 1e-15);
    let low = FockState64::basis(&s, &[1, 0]).unwrap();
    assert_eq!(low.create_mode(1).dropped, 0.0);
}

#[test]
fn identity_suite_is_exact_below_cutoff() {
    let start = Instant::now();
    for (d, n) in [(1, 8), (2, 6), (2, 8), (3, 6), (3, 8)] {
        for row in identity_suite::<f64>(d, n, 7).unwrap() {
            assert!(row.residual <= 1e-12, "{} ({}): {:.2e}", row.identity, row.parameters, row.residual);
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0, "suite took {:?}", start.elapsed());
}

#[test]
fn identity_suite_in_single_precision() {
    for row in identity_suite::<f32>(2, 6, 11).unwrap() {
        assert!(row.residual <= 2e-4, "{}: {:.2e}", row.identity, row.residual);
    }
}

#[test]
fn gamma_requires_a_contraction() {
    let s = FockSpace::new(2, 3).unwrap();
    let psi = FockState64::vacuum(&s);
    let a = DMatrix::from_diagonal_element(2, 2, cz(1.5, 0.0));
    assert!(matches!(psi.gamma(&a), Err(FockError::NotContraction { .. })));
    let half = DMatrix::from_diagonal_element(2, 2, cz(0.5, 0.0));
    // Γ(A) acts as Aⁿ on sector n
    let two = FockState64::basis(&s, &[1, 1]).unwrap();
    assert!(two.gamma(&half).unwrap().sub(&two.scale(cz(0.25, 0.0))).norm() < 1e-15);
}

#[test]
fn displacement_relation_converges_with_cutoff() {
    let v0 = [cz(0.0, 0.0), cz(0.0, 0.0)];
    let f = [cz(0.6, 0.2), cz(-0.3, 0.5)];
    let zero = displacement_check(6, &v0, &f).unwrap();
    assert!(zero.residual < 1e-15);

    let raw = [cz(0.7, -0.2), cz(0.25, 0.6)];
    let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let v: Vec<_> = raw.iter().map(|z| z * (0.3 / n)).collect();
    let r6 = displacement_check(6, &v, &f).unwrap();
    let r10 = displacement_check(10, &v, &f).unwrap();
    println!("displacement residual N=6 {:.2e}, N=10 {:.2e}", r6.residual, r10.residual);
    assert!(r10.residual * 10.0 <= r6.residual);
    assert!(r6.vacuum_norm_defect < 1e-13 && r10.vacuum_norm_defect < 1e-13);
}

#[test]
fn coherent_state_is_the_weyl_displaced_vacuum() {
    // e^{−iψ(v)}Ω with v₊ = iα is e^{c*(α) − c(α)}Ω
    let s = FockSpace::new(2, 10).unwrap();
    let alpha = [cz(0.3, 0.1), cz(-0.2, 0.25)];
    let v: Vec<_> = alpha.iter().map(|z| z * cz(0.0, 1.0)).collect();
    let vbar: Vec<_> = v.iter().map(|z| z.conj()).collect();
    let u = exp_i(&psi_matrix(&s, &v, &vbar), -1.0);
    let omega = FockState64::vacuum(&s);
    let weyl = FockState64::from_amps(&s, &u * &omega.amps);
    let coh = coherent_state(&s, &alpha).unwrap();
    assert!(coh.dropped < 1e-6, "{:.2e}", coh.dropped);
    assert!(weyl.sub(&coh).norm() < 1e-7, "{:.2e}", weyl.sub(&coh).norm());
    // eigenvector of c(f) with eigenvalue (f, α) in the low sectors
    let f = [cz(1.0, 0.0), cz(0.0, -1.0)];
    let fa: Complex<f64> = f.iter().zip(&alpha).map(|(a, b)| a.conj() * b).sum();
    assert!(coh.annihilate(&f).sub(&coh.scale(fa)).norm() < 1e-7);
}

#[test]
fn vacuum_is_the_unique_annihilated_state() {
    let rows = identity_suite::<f64>(3, 4, 1).unwrap();
    let r = rows.iter().find(|r| r.identity.starts_with("ker")).unwrap();
    assert_eq!(r.residual, 0.0);
}

#[test]
fn shale_criterion() {
    let id = BlockOperator64::identity(4);
    let r = shale_check(&id, 1e-12).unwrap();
    assert_eq!(r.hs_norm, 0.0);
    assert!(r.pass);

    let g = Grid::new(32, 8.0, Boundary::Periodic).unwrap();
    let ops = FieldOperators::new(g, &PotentialSpec::gaussian(0.5, 1.0), 1.0).unwrap();
    let u = build_u_blocks(&ops, 2.0);
    let r = shale_check(&u, 1e-9).unwrap();
    assert!(r.pass && r.hs_norm > 0.0 && r.hs_norm < 10.0, "{r:?}");

    let mut bad = BlockOperator64::identity(4);
    bad.pp[(0, 0)] = cz(2.0, 0.0);
    assert!(matches!(shale_check(&bad, 1e-9), Err(FockError::NotSymplectic { .. })));
}

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use cnormal::foundation::{
    abs_pair, hermitian_eig, image, inner, kernel, polar_unitary, psd_sqrt, subspace_intersect, vdist, vnorm, vscale,
    Subspace,
};
use cnormal::random::{self, NormalShape};
use cnormal::{
    build_witness, check_hypotheses, decide_gs, evaluate, is_c_normal, is_c_symmetric, spectral_measure_abs,
    verify_conjugation, BorelSet, ComplexMatrix, Matrix, Tolerances, VerdictKind,
};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

fn adjust_rank(m: &ComplexMatrix, seed: u64, drop: usize) -> ComplexMatrix {
    // Multiply by a projector of co-rank `drop` to get exact kernels.
    let n = m.rows();
    let u = random::unitary(&mut random::rng(seed ^ 0x55), n);
    let keep: Vec<usize> = (drop.min(n)..n).collect();
    let f = u.select_columns(&keep);
    m.matmul(&f.matmul(&f.adjoint()))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn eig_reconstructs(seed in any::<u64>(), n in 1usize..7) {
        let h: ComplexMatrix = random::hermitian(&mut random::rng(seed), n);
        let e = hermitian_eig(&h, &tol()).unwrap();
        prop_assert!(e.reconstruct().dist(&h) <= 1e-12 * (1.0 + h.norm()));
        prop_assert!(e.frame.unitarity_residual() <= 1e-12);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sqrt_and_polar(seed in any::<u64>(), n in 1usize..7, drop in 0usize..3) {
        let a = adjust_rank(&random::matrix(&mut random::rng(seed), n), seed, drop);
        let ata = a.adjoint().matmul(&a);
        let r = psd_sqrt(&ata, &tol()).unwrap();
        prop_assert!(r.matmul(&r).dist(&ata) <= 1e-10 * (1.0 + ata.norm()));
        let (p, _) = abs_pair(&a);
        let u = polar_unitary(&a, &tol()).unwrap();
        prop_assert!(u.unitarity_residual() <= 1e-10);
        prop_assert!(u.matmul(&p).dist(&a) <= 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn kernel_is_orthogonal_to_coimage(seed in any::<u64>(), n in 1usize..7, drop in 0usize..3) {
        let a = adjust_rank(&random::matrix(&mut random::rng(seed), n), seed, drop);
        let k = kernel(&a, &tol());
        let co = image(&a.adjoint(), &tol());
        prop_assert_eq!(k.dim() + co.dim(), n);
        prop_assert!(co.frame().adjoint().matmul(k.frame()).norm() <= 1e-10);
        prop_assert!(a.matmul(k.frame()).norm() <= 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn intersection_is_symmetric_and_bounded(seed in any::<u64>(), n in 2usize..7) {
        let mut r = random::rng(seed);
        let shared: cnormal::ComplexVector = random::vector(&mut r, n);
        let s1 = Subspace::span(n, &[shared.clone(), random::vector(&mut r, n)], 1e-12);
        let s2 = Subspace::span(n, &[shared, random::vector(&mut r, n)], 1e-12);
        let a = subspace_intersect(&s1, &s2, &tol()).unwrap();
        let b = subspace_intersect(&s2, &s1, &tol()).unwrap();
        prop_assert_eq!(a.dim(), b.dim());
        prop_assert!(a.dim() <= s1.dim().min(s2.dim()));
        prop_assert!(a.dim() >= 1);
        prop_assert!(a.same_as(&b, 1e-8));
    }

    #[test]
    fn conjugation_is_an_antiunitary_involution(seed in any::<u64>(), n in 1usize..7) {
        let mut r = random::rng(seed);
        let c: cnormal::Conjugation64 = random::conjugation(&mut r, n);
        prop_assert!(verify_conjugation(&c).max() <= 1e-12);
        let x = random::vector(&mut r, n);
        let y = random::vector(&mut r, n);
        let cx = c.apply(&x).unwrap();
        let cy = c.apply(&y).unwrap();
        prop_assert!(vdist(&c.apply(&cx).unwrap(), &x) <= 1e-12 * (1.0 + vnorm(&x)));
        // ⟨Cx, Cy⟩ = ⟨y, x⟩
        let lhs = inner(&cx, &cy);
        let rhs = inner(&y, &x);
        assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-10 * (1.0 + vnorm(&x) * vnorm(&y)));
        assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-10 * (1.0 + vnorm(&x) * vnorm(&y)));
        // Conjugate-linear: C(i·x) = −i·Cx.
        let ix: Vec<_> = x.iter().map(|z| z * cnormal::Complex64::i()).collect();
        let expect: Vec<_> = cx.iter().map(|z| -z * cnormal::Complex64::i()).collect();
        prop_assert!(vdist(&c.apply(&ix).unwrap(), &expect) <= 1e-12 * (1.0 + vnorm(&x)));
    }

    #[test]
    fn c_symmetric_is_c_normal_and_decided_yes(seed in any::<u64>(), n in 1usize..6) {
        let (a, c) = random::c_symmetric::<f64, _>(&mut random::rng(seed), n);
        prop_assert!(is_c_symmetric(&a, &c).unwrap() <= 1e-12 * (1.0 + a.norm()));
        prop_assert!(is_c_normal(&a, &c).unwrap() <= 1e-10 * (1.0 + a.norm()).powi(2));
        let v = decide_gs(&a, &tol()).unwrap();
        prop_assert_eq!(v.kind, VerdictKind::Yes);
        let w = v.witness.unwrap();
        prop_assert!(is_c_normal(&a, &w).unwrap() <= 1e-8 * (1.0 + a.norm()).powi(2));
    }

    #[test]
    fn spectral_measure_resolves_identity(seed in any::<u64>(), n in 1usize..7, singular in any::<bool>()) {
        let spec = random::hypothesis_instance::<f64, _>(&mut random::rng(seed), NormalShape { dim: n, singular }, 1.0, &tol());
        let e = spectral_measure_abs(&spec.n, &tol()).unwrap();
        let all = evaluate(&e, &BorelSet::All).unwrap();
        prop_assert!(all.dist(&Matrix::identity(n)) <= 1e-10);
        let k = e.atoms().len();
        let (p, _) = abs_pair(&spec.n);
        let mut sum = Matrix::zeros(n, n);
        let mut recon = Matrix::zeros(n, n);
        for i in 0..k {
            let ei = evaluate(&e, &BorelSet::Atoms(vec![i])).unwrap();
            prop_assert!(ei.matmul(&ei).dist(&ei) <= 1e-10);
            prop_assert!(ei.matmul(&spec.n).dist(&spec.n.matmul(&ei)) <= 1e-10 * (1.0 + spec.n.norm()));
            recon = &recon + &ei.scale_real(e.atoms()[i].s);
            sum = &sum + &ei;
        }
        prop_assert!(sum.dist(&all) <= 1e-10);
        prop_assert!(recon.dist(&p) <= 1e-10 * (1.0 + p.norm()));
        if k >= 2 {
            let split = evaluate(&e, &BorelSet::Atoms(vec![0])).unwrap();
            let rest = evaluate(&e, &BorelSet::Atoms((1..k).collect())).unwrap();
            prop_assert!((&split + &rest).dist(&all) <= 1e-10);
            prop_assert!(split.matmul(&rest).norm() <= 1e-10);
        }
    }

    #[test]
    fn verdict_is_invariant_under_adjoint(seed in any::<u64>(), n in 1usize..6) {
        let a: ComplexMatrix = random::matrix(&mut random::rng(seed), n);
        let v = decide_gs(&a, &tol()).unwrap();
        let w = decide_gs(&a.adjoint(), &tol()).unwrap();
        prop_assert_eq!(v.kind, w.kind);
    }

    #[test]
    fn hypotheses_imply_membership(seed in any::<u64>(), n in 1usize..6, singular in any::<bool>()) {
        let spec = random::hypothesis_instance::<f64, _>(&mut random::rng(seed), NormalShape { dim: n, singular }, 5.0, &tol());
        let report = check_hypotheses(&spec, &tol()).unwrap();
        prop_assert!(report.pass, "{}", report.summary());
        let w = build_witness(&spec, &tol()).unwrap();
        let a = spec.operator();
        prop_assert!(is_c_normal(&a, &w.conjugation).unwrap() <= 1e-8 * (1.0 + a.norm()).powi(2));
        prop_assert_eq!(decide_gs(&a, &tol()).unwrap().kind, VerdictKind::Yes);
    }

    #[test]
    fn unitary_report_reduces_to_norm_and_numerical_range(seed in any::<u64>(), n in 1usize..6, skew in any::<bool>()) {
        let (u, x, y) = random::unitary_triple::<f64, _>(&mut random::rng(seed), n);
        let y = if skew { vscale(&y, cnormal::Complex64::new(1.1, 0.0)) } else { y };
        let spec = cnormal::PerturbationSpec::new(u.clone(), x.clone(), y.clone(), cnormal::Complex64::new(0.7, 0.2), &tol()).unwrap();
        let report = check_hypotheses(&spec, &tol()).unwrap();
        prop_assert!(report.unitary);
        let ux = inner(&u.mul_vec(&x), &x);
        let uy = inner(&u.mul_vec(&y), &y);
        let simple = (vnorm(&x) - vnorm(&y)).abs() <= 1e-9 && (ux - uy).norm() <= 1e-9 * (1.0 + vnorm(&x).powi(2));
        prop_assert_eq!(report.pass, simple);
    }
}

#[test]
fn f32_smoke() {
    let t = cnormal::Tolerances32::default();
    let ex = cnormal::fixtures::example1::<f32>();
    let cs = cnormal::cs_trace_test(&ex.a, &t).unwrap();
    assert!((cs.value.re - 4.0).abs() < 1e-3);
    let ex2 = cnormal::fixtures::example2::<f32>();
    let v = decide_gs(&ex2.a, &t).unwrap();
    assert_eq!(v.kind, VerdictKind::No);
    let c = random::conjugation::<f32, _>(&mut random::rng(9), 4);
    assert!(verify_conjugation(&c).max() < 1e-5);
}

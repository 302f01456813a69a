//! Acceptance criteria, one line each. Runs as a plain binary
//! (`harness = false`) so the report is printed under `cargo test` too.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cnormal::cnormal::{GsVerdict, ObstructionCertificate};
use cnormal::fixtures::{self, WorkedExample};
use cnormal::perturbation::{corollary_blocks, Condition};
use cnormal::random::{self, NormalShape};
use cnormal::{
    build_witness, check_hypotheses, conj_angl, cs_trace_test, decide_gs, fixed_real_basis, is_c_normal, m_space,
    m_space_fixpoint, verify_conjugation, ComplexMatrix, CsVerdict, Matrix, Tolerances, VerdictKind,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn decide(a: &ComplexMatrix) -> GsVerdict<f64> {
    decide_gs(a, &tol()).expect("decide_gs")
}

fn criterion1() -> Outcome {
    let a = fixtures::example1::<f64>().a;
    // Warm-up, then time the best of a few runs.
    let _ = cs_trace_test(&a, &tol());
    let mut best = Duration::MAX;
    let mut t = None;
    for _ in 0..5 {
        let start = Instant::now();
        t = Some(cs_trace_test(&a, &tol()).unwrap());
        best = best.min(start.elapsed());
    }
    let t = t.unwrap();
    let err = ((t.value.re - 4.0).powi(2) + t.value.im.powi(2)).sqrt();
    outcome(
        err <= 1e-9 && t.verdict == CsVerdict::NotComplexSymmetric && best < Duration::from_millis(10),
        format!(
            "trace = {:.12}{:+.1e}i, |t - 4| = {err:.1e}, {best:?}",
            t.value.re, t.value.im
        ),
    )
}

fn criterion2() -> Outcome {
    let a = fixtures::example1::<f64>().a;
    let v = decide(&a);
    let res = v.witness.as_ref().map(|c| is_c_normal(&a, c).unwrap());
    let cs = cs_trace_test(&a, &tol()).unwrap().verdict;
    outcome(
        v.kind == VerdictKind::Yes && res.is_some_and(|r| r <= 1e-8) && cs == CsVerdict::NotComplexSymmetric,
        format!(
            "{:?} via tier {:?}, witness residual {:.1e}",
            v.kind,
            v.diagnostics.tier,
            res.unwrap_or(f64::NAN)
        ),
    )
}

fn modulus_of(v: &GsVerdict<f64>) -> Option<(f64, f64)> {
    match v.certificate.as_ref()? {
        ObstructionCertificate::Modulus { moduli, .. } => Some(*moduli),
        _ => None,
    }
}

fn criterion3() -> Outcome {
    let ex = fixtures::example2::<f64>();
    let v = decide(&ex.a);
    let m = modulus_of(&v);
    let recheck = v
        .certificate
        .as_ref()
        .map(|c| c.recheck(&ex.a).unwrap())
        .unwrap_or(f64::NAN);
    let cert_ok = v.kind == VerdictKind::No
        && m.is_some_and(|(m1, m2)| (m1 - 2.0 / 6f64.sqrt()).abs() <= 1e-9 && m2.abs() <= 1e-9)
        && recheck <= 1e-9;
    let report = check_hypotheses(&ex.spec(&tol()).unwrap(), &tol()).unwrap();
    let fails = report.failures();
    let only_ii = !fails.is_empty() && fails.iter().all(|f| f.condition == Condition::II);
    let at_one = fails
        .iter()
        .find(|f| (f.s - 1.0).abs() < 1e-12)
        .is_some_and(|f| (f.gap - 1.0).abs() <= 1e-9);
    outcome(
        cert_ok && only_ii && at_one,
        format!("moduli {m:?}, recheck {recheck:.1e}; hypotheses: {}", report.summary()),
    )
}

fn criterion4() -> Outcome {
    let ex = fixtures::example3::<f64>();
    let v = decide(&ex.a);
    let m = modulus_of(&v);
    let m1 = 1.0 / (6.0 - 2.0 * 3f64.sqrt()).sqrt();
    let m2 = 1.0 / (6.0 + 2.0 * 3f64.sqrt()).sqrt();
    let cert_ok = v.kind == VerdictKind::No && m.is_some_and(|(a, b)| (a - m1).abs() <= 1e-8 && (b - m2).abs() <= 1e-8);
    let report = check_hypotheses(&ex.spec(&tol()).unwrap(), &tol()).unwrap();
    let fails = report.failures();
    let only_i = fails.len() == 1 && fails[0].condition == Condition::I;
    let ((xr, xi), (yr, yi)) = report.atoms[0].cond_i;
    let values_ok =
        (xr - 1.0).abs() <= 1e-9 && xi.abs() <= 1e-9 && (yr + 0.5).abs() <= 1e-9 && (yi - 0.5).abs() <= 1e-9;
    outcome(
        cert_ok && only_i && values_ok,
        format!("moduli {m:?} vs formula ({m1:.9}, {m2:.9}); <UEx,x> = {xr:.3}{xi:+.3}i, <UEy,y> = {yr:.3}{yi:+.3}i"),
    )
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let mut r = random::rng(505);
    let mut worst = 0.0f64;
    let mut failures = 0;
    let mut singular = 0;
    let trials = 240;
    for k in 0..trials {
        let dim = 2 + k % 7;
        let shape = NormalShape {
            dim,
            singular: k % 2 == 1,
        };
        singular += shape.singular as usize;
        let spec = random::hypothesis_instance(&mut r, shape, 10.0, &tol());
        match build_witness(&spec, &tol()) {
            Ok(w) => worst = worst.max(w.residual),
            Err(_) => failures += 1,
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && worst <= 1e-8 && elapsed < Duration::from_secs(30),
        format!(
            "{trials} trials ({singular} singular), {failures} failures, worst residual {worst:.1e}, {elapsed:.2?}"
        ),
    )
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let mut r = random::rng(606);
    let mut not_yes = 0;
    for k in 0..50 {
        let size = 2 + k % 3;
        let u = random::unitary(&mut r, size);
        let v = random::unitary(&mut r, size);
        let rr = Matrix::outer(&random::vector(&mut r, size), &random::vector(&mut r, size));
        for b in corollary_blocks(&u, &v, &rr, &tol()).unwrap() {
            if decide(&b).kind != VerdictKind::Yes {
                not_yes += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        not_yes == 0 && elapsed < Duration::from_secs(30),
        format!("200 block operators, {not_yes} not Yes, {elapsed:.2?}"),
    )
}

fn criterion7() -> Outcome {
    let mut r = random::rng(707);
    let mut worst = 0.0f64;
    let mut dim_mismatch = 0;
    let mut normal_nonzero = 0;
    let mut structured = 0;
    for k in 0..200 {
        let dim = 2 + k % 9;
        let a: ComplexMatrix = match k % 4 {
            0 => random::matrix(&mut r, dim),
            1 => {
                let n = random::normal(&mut r, dim);
                let a1 = m_space(&n, &tol()).unwrap();
                let a2 = m_space_fixpoint(&n, &tol()).unwrap();
                if a1.dim() != 0 || a2.dim() != 0 {
                    normal_nonzero += 1;
                }
                n
            }
            2 => {
                // Normal summand next to a non-normal block, in a random basis.
                let split = 1 + k % (dim - 1);
                structured += 1;
                let b = Matrix::direct_sum(&random::normal(&mut r, split), &random::matrix(&mut r, dim - split));
                let w = random::unitary(&mut r, dim);
                w.matmul(&b).matmul(&w.adjoint())
            }
            _ => random::c_symmetric(&mut r, dim).0,
        };
        let m1 = m_space(&a, &tol()).unwrap();
        let m2 = m_space_fixpoint(&a, &tol()).unwrap();
        if m1.dim() != m2.dim() {
            dim_mismatch += 1;
        } else {
            worst = worst.max(m1.max_principal_sine(&m2));
        }
    }
    outcome(
        dim_mismatch == 0 && worst <= 1e-6 && normal_nonzero == 0,
        format!(
            "200 matrices ({structured} with a normal summand), {dim_mismatch} dimension mismatches, worst sine {worst:.1e}, normal inputs with M(A) != 0: {normal_nonzero}"
        ),
    )
}

fn criterion8() -> Outcome {
    let mut r = random::rng(808);
    let pool: Vec<WorkedExample<f64>> = fixtures::NAMES.iter().map(|n| fixtures::by_name(n).unwrap()).collect();
    let mut mismatches = 0;
    let mut kinds = [0usize; 3];
    for k in 0..100 {
        let b: ComplexMatrix = match k % 3 {
            0 => pool[k / 3 % pool.len()].a.clone(),
            1 => random::matrix(&mut r, 2 + k % 3),
            _ => random::c_symmetric(&mut r, 2 + k % 3).0,
        };
        let n = random::normal(&mut r, 1 + k % 3);
        let kb = decide(&b).kind;
        let ks = decide(&Matrix::direct_sum(&n, &b)).kind;
        kinds[kb as usize] += 1;
        if kb != ks {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("100 pairs (B verdicts yes/no/unknown = {kinds:?}), {mismatches} mismatches"),
    )
}

fn criterion9() -> Outcome {
    let mut r = random::rng(909);
    let mut worst_axiom = 0.0f64;
    for k in 0..1000 {
        let c = random::conjugation::<f64, _>(&mut r, 1 + k % 8);
        let res = verify_conjugation(&c);
        worst_axiom = worst_axiom.max(res.isometry).max(res.involution);
    }
    let mut worst_eq = 0.0f64;
    let mut errors = 0;
    for k in 0..200 {
        let (u, x, y) = random::unitary_triple::<f64, _>(&mut r, 2 + k % 7);
        match conj_angl(&u, &x, &y, &tol()) {
            Ok(c) => {
                let e1 = cnormal::foundation::vdist(&c.apply(&x).unwrap(), &y);
                let e2 = cnormal::foundation::vdist(&c.apply(&u.mul_vec(&x)).unwrap(), &u.adjoint().mul_vec(&y));
                worst_eq = worst_eq.max(e1).max(e2);
                let ax = c.residuals();
                worst_axiom = worst_axiom.max(ax.isometry).max(ax.involution);
            }
            Err(_) => errors += 1,
        }
    }
    outcome(
        worst_axiom <= 1e-10 && worst_eq <= 1e-8 && errors == 0,
        format!("1000 conjugations + 200 conj_angl: worst axiom residual {worst_axiom:.1e}, worst equation residual {worst_eq:.1e}, {errors} errors"),
    )
}

/// Fixtures, then random operators of mixed kinds.
fn invariance_corpus() -> Vec<ComplexMatrix> {
    let mut out: Vec<ComplexMatrix> = fixtures::NAMES
        .iter()
        .map(|n| fixtures::by_name::<f64>(n).unwrap().a)
        .collect();
    let mut r = random::rng(1010);
    for k in 0..100 {
        let dim = 2 + k % 5;
        out.push(match k % 4 {
            0 => random::matrix(&mut r, dim),
            1 => random::c_symmetric(&mut r, dim).0,
            2 => random::normal(&mut r, dim),
            _ => {
                let spec = random::hypothesis_instance(
                    &mut r,
                    NormalShape {
                        dim,
                        singular: k % 8 == 3,
                    },
                    5.0,
                    &tol(),
                );
                spec.operator()
            }
        });
    }
    out
}

fn criterion10(corpus: &[ComplexMatrix], verdicts: &[GsVerdict<f64>]) -> Outcome {
    let mut r = random::rng(1011);
    let mut adj_bad = 0;
    let mut transport_bad = 0;
    for (a, v) in corpus.iter().zip(verdicts) {
        if decide(&a.adjoint()).kind != v.kind {
            adj_bad += 1;
        }
        let w = random::unitary(&mut r, a.rows());
        if decide(&w.matmul(a).matmul(&w.adjoint())).kind != v.kind {
            transport_bad += 1;
        }
    }
    outcome(
        adj_bad == 0 && transport_bad == 0,
        format!(
            "{} operators: {adj_bad} adjoint mismatches, {transport_bad} transport mismatches",
            corpus.len()
        ),
    )
}

fn criterion11(corpus: &[ComplexMatrix], verdicts: &[GsVerdict<f64>]) -> Outcome {
    let mut worst = 0.0f64;
    let mut yes = 0;
    for (a, v) in corpus.iter().zip(verdicts) {
        let Some(c) = &v.witness else { continue };
        yes += 1;
        let b = fixed_real_basis(c);
        let ata = b.adjoint().matmul(&a.adjoint().matmul(a)).matmul(&b);
        let aat = b.adjoint().matmul(&a.matmul(&a.adjoint())).matmul(&b);
        worst = worst.max((&ata.transpose() - &aat).max_abs());
    }
    outcome(
        yes > 0 && worst <= 1e-7,
        format!("{yes} Yes verdicts, worst entrywise gap {worst:.1e}"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "cs-trace of example 1 equals 4", criterion1()),
        (2, "example 1 is in GS with a verified witness", criterion2()),
        (
            3,
            "example 2 rejected with modulus certificate; condition (ii) fails at s = 1",
            criterion3(),
        ),
        (
            4,
            "example 3 rejected with modulus certificate; condition (i) fails",
            criterion4(),
        ),
        (5, "witness construction sweep", criterion5()),
        (6, "block corollary family is in GS", criterion6()),
        (7, "M(A) power and fixpoint algorithms agree", criterion7()),
        (8, "normal direct summand does not change the verdict", criterion8()),
        (9, "conjugation axioms and conj_angl equations", criterion9()),
    ];
    let corpus = invariance_corpus();
    let verdicts: Vec<GsVerdict<f64>> = corpus.iter().map(decide).collect();
    results.push((
        10,
        "adjoint and unitary transport invariance",
        criterion10(&corpus, &verdicts),
    ));
    results.push((
        11,
        "A*A and AA* are transposes in the fixed basis of the witness",
        criterion11(&corpus, &verdicts),
    ));

    let mut failed = 0;
    println!();
    for (n, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += !o.pass as usize;
        println!("criterion {n:>2} [{tag}] {name}: {}", o.detail);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.2?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::path::{Path, PathBuf};

use cnormal::cnormal::ObstructionCertificate;
use cnormal::perturbation::{corollary_block_specs, HypothesisReport};
use cnormal::random;
use cnormal::{
    build_witness, cs_trace_test, decide_gs_with, is_c_normal, m_space, m_space_fixpoint, verify_conjugation,
    ComplexMatrix, Conjugation64, CsVerdict, PerturbationSpec64, VerdictKind,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::doc::{self, pairs, InputError, MatrixDocument, Pair, VerdictDocument};
use crate::{
    parse_document, read_document, read_text, Failure, Output, PerturbationArgs, Settings, EXIT_INPUT, EXIT_NO,
    EXIT_UNKNOWN, EXIT_YES,
};

fn emit(settings: &Settings, value: &impl Serialize, summary: impl FnOnce() -> String) {
    match settings.output {
        Output::Json => println!("{}", serde_json::to_string_pretty(value).expect("documents serialize")),
        Output::Summary => println!("{}", summary()),
    }
}

fn verdict_code(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::Yes => EXIT_YES,
        VerdictKind::No => EXIT_NO,
        VerdictKind::Unknown => EXIT_UNKNOWN,
    }
}

fn verdict_summary(label: &str, v: &VerdictDocument) -> String {
    let d = &v.diagnostics;
    let detail = match (&v.certificate, d.witness_residual) {
        (Some(c), _) => match c {
            doc::CertificateDocument::Modulus { moduli, .. } => {
                format!("modulus certificate ({:.5}, {:.5})", moduli[0], moduli[1])
            }
            doc::CertificateDocument::PhaseCycle { indices, product, .. } => {
                format!(
                    "phase-cycle certificate over {indices:?}, product {:.5}{:+.5}i",
                    product[0], product[1]
                )
            }
            doc::CertificateDocument::WordTrace { word, trace } => {
                format!("word-trace certificate tr({word}) = {:.5}{:+.5}i", trace[0], trace[1])
            }
        },
        (None, Some(r)) => format!("witness residual {r:.2e}"),
        (None, None) => "no witness found".to_string(),
    };
    format!(
        "{label}: {} (tier {}, dim M(A) = {}; {detail})",
        v.kind, d.tier, d.m_dim
    )
}

fn decide_one(path: &Path, settings: &Settings, jobs: usize) -> Result<(VerdictDocument, u8), Failure> {
    let d = read_document(path)?;
    let a = d.matrix()?;
    let opts = cnormal::DecideOptions { jobs, ..settings.opts };
    let v = decide_gs_with(&a, &settings.tol, &opts)?;
    Ok((
        VerdictDocument::new(&v, d.name.clone(), &settings.tol),
        verdict_code(v.kind),
    ))
}

/// Decides every input; with several inputs and `--jobs > 1` the documents
/// are spread over threads, results kept in input order.
pub fn decide(inputs: &[PathBuf], settings: &Settings) -> Result<u8, Failure> {
    if inputs.len() == 1 {
        let (v, code) = decide_one(&inputs[0], settings, settings.jobs)?;
        let label = v.name.clone().unwrap_or_else(|| inputs[0].display().to_string());
        emit(settings, &v, || verdict_summary(&label, &v));
        return Ok(code);
    }
    let n = inputs.len();
    let jobs = settings.jobs.min(n);
    let mut results: Vec<Option<Result<(VerdictDocument, u8), Failure>>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    (w..n)
                        .step_by(jobs)
                        .map(|i| (i, decide_one(&inputs[i], settings, 1)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    let mut code = 0;
    let mut docs = Vec::with_capacity(n);
    let mut lines = Vec::with_capacity(n);
    for (path, r) in inputs.iter().zip(results) {
        let label = path.display().to_string();
        match r.expect("every input decided") {
            Ok((v, c)) => {
                code = code.max(c);
                lines.push(verdict_summary(v.name.as_deref().unwrap_or(&label), &v));
                docs.push(serde_json::to_value(&v).expect("documents serialize"));
            }
            Err(f) => {
                eprintln!("error: {label}: {}", f.message);
                code = code.max(f.code);
                lines.push(format!("{label}: error: {}", f.message));
                docs.push(json!({ "input": label, "error": f.message, "exit_code": f.code }));
            }
        }
    }
    emit(settings, &docs, || lines.join("\n"));
    Ok(code)
}

fn load_spec(args: &PerturbationArgs, settings: &Settings) -> Result<(PerturbationSpec64, Option<String>), Failure> {
    let d = read_document(&args.input)?;
    let name = d.name.clone();
    let (n, x, y, lambda) = match d.perturbation()? {
        Some((n, x, y, lambda)) => {
            if args.x.is_some() || args.y.is_some() || args.lambda.is_some() {
                return Err(InputError("document already carries x, y and lambda".into()).into());
            }
            // The stated A must be the assembled operator.
            let a = d.matrix()?;
            let assembled = &n + &cnormal::rank_one(&y, &x, lambda)?;
            if a.dist(&assembled) > settings.tol.scaled(a.norm()) {
                return Err(InputError(format!(
                    "entries differ from N + lambda y(x)x by {:.3e}",
                    a.dist(&assembled)
                ))
                .into());
            }
            (n, x, y, lambda)
        }
        None => {
            let n = d.matrix()?;
            let (Some(xs), Some(ys)) = (&args.x, &args.y) else {
                return Err(InputError("document has no perturbation; pass --x and --y".into()).into());
            };
            let x = doc::parse_vector("--x", xs, d.dim)?;
            let y = doc::parse_vector("--y", ys, d.dim)?;
            let lambda = match &args.lambda {
                Some(l) => doc::parse_scalar("--lambda", l)?,
                None => cnormal::Complex64::new(0.0, 0.0),
            };
            (n, x, y, lambda)
        }
    };
    Ok((PerturbationSpec64::new(n, x, y, lambda, &settings.tol)?, name))
}

fn report_json(r: &HypothesisReport) -> Value {
    let atoms: Vec<Value> = r
        .atoms
        .iter()
        .map(|a| {
            let ((xr, xi), (yr, yi)) = a.cond_i;
            json!({
                "s": a.s,
                "condition_i": { "x": [xr, xi], "y": [yr, yi], "gap": a.gap_i() },
                "condition_ii": { "x": a.cond_ii.0, "y": a.cond_ii.1, "gap": a.gap_ii() },
            })
        })
        .collect();
    let failures: Vec<Value> = r
        .failures()
        .iter()
        .map(|f| json!({ "condition": f.condition.to_string(), "s": f.s, "gap": f.gap }))
        .collect();
    json!({
        "pass": r.pass,
        "unitary": r.unitary,
        "threshold": r.threshold,
        "norm_x": r.norm_x,
        "norm_y": r.norm_y,
        "atoms": atoms,
        "failures": failures,
    })
}

pub fn witness_perturbation(args: &PerturbationArgs, settings: &Settings) -> Result<u8, Failure> {
    let (spec, name) = load_spec(args, settings)?;
    let report = cnormal::check_hypotheses(&spec, &settings.tol)?;
    if !report.pass {
        let out = json!({
            "schema_version": doc::SCHEMA_VERSION,
            "name": name,
            "status": "hypotheses-failed",
            "report": report_json(&report),
        });
        emit(settings, &out, || format!("hypotheses failed: {}", report.summary()));
        return Ok(EXIT_NO);
    }
    let w = build_witness(&spec, &settings.tol)?;
    let out = json!({
        "schema_version": doc::SCHEMA_VERSION,
        "name": name,
        "status": "witness",
        "witness": MatrixDocument::from_matrix(w.conjugation.matrix()),
        "residual": w.residual,
        "report": report_json(&w.report),
    });
    emit(settings, &out, || format!("witness built, residual {:.2e}", w.residual));
    Ok(EXIT_YES)
}

pub fn check_hypotheses(args: &PerturbationArgs, settings: &Settings) -> Result<u8, Failure> {
    let (spec, name) = load_spec(args, settings)?;
    let report = cnormal::check_hypotheses(&spec, &settings.tol)?;
    let out = json!({
        "schema_version": doc::SCHEMA_VERSION,
        "name": name,
        "report": report_json(&report),
    });
    emit(settings, &out, || report.summary());
    Ok(if report.pass { EXIT_YES } else { EXIT_NO })
}

pub fn mspace(input: &Path, settings: &Settings) -> Result<u8, Failure> {
    let d = read_document(input)?;
    let a = d.matrix()?;
    let m = m_space(&a, &settings.tol)?;
    let fixpoint = m_space_fixpoint(&a, &settings.tol)?;
    let sine = if m.dim() == fixpoint.dim() {
        Some(m.max_principal_sine(&fixpoint))
    } else {
        None
    };
    let basis: Vec<Vec<Pair>> = m.frame().columns().iter().map(|c| pairs(c)).collect();
    let out = json!({
        "schema_version": doc::SCHEMA_VERSION,
        "name": d.name,
        "ambient": m.ambient_dim(),
        "dim": m.dim(),
        "basis": basis,
        "fixpoint_dim": fixpoint.dim(),
        "max_principal_sine": sine,
    });
    emit(settings, &out, || {
        format!("{}: dim M(A) = {} of {}", d.label(), m.dim(), m.ambient_dim())
    });
    Ok(EXIT_YES)
}

pub fn cs_trace(input: &Path, settings: &Settings) -> Result<u8, Failure> {
    let d = read_document(input)?;
    let a = d.matrix()?;
    let t = cs_trace_test(&a, &settings.tol)?;
    let verdict = match t.verdict {
        CsVerdict::NotComplexSymmetric => "not-complex-symmetric",
        CsVerdict::Inconclusive => "inconclusive",
    };
    let out = json!({
        "schema_version": doc::SCHEMA_VERSION,
        "name": d.name,
        "value": [t.value.re, t.value.im],
        "threshold": t.threshold,
        "verdict": verdict,
    });
    emit(settings, &out, || {
        format!("{}: trace = {}{:+}i ({verdict})", d.label(), t.value.re, t.value.im)
    });
    Ok(EXIT_YES)
}

enum Evidence {
    Witness(ComplexMatrix),
    Certificate(ObstructionCertificate<f64>),
}

fn bad_json(path: &Path, e: serde_json::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

/// A bare matrix `u`, a verdict (its witness or certificate), or a
/// witness-perturbation result.
fn read_evidence(path: &Path) -> Result<Evidence, Failure> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| bad_json(path, e))?;
    if value.get("kind").is_some() {
        let v: VerdictDocument = serde_json::from_value(value).map_err(|e| bad_json(path, e))?;
        return match (v.witness, v.certificate) {
            (Some(w), _) => Ok(Evidence::Witness(w.matrix()?)),
            (None, Some(c)) => Ok(Evidence::Certificate(c.to_certificate()?)),
            (None, None) => Err(InputError(format!(
                "{}: verdict carries neither witness nor certificate",
                path.display()
            ))
            .into()),
        };
    }
    if let Some(w) = value.get("witness") {
        let w: MatrixDocument = serde_json::from_value(w.clone()).map_err(|e| bad_json(path, e))?;
        return Ok(Evidence::Witness(w.matrix()?));
    }
    Ok(Evidence::Witness(parse_document(path, &text)?.matrix()?))
}

pub fn verify(matrix: &Path, evidence: &Path, settings: &Settings) -> Result<u8, Failure> {
    let d = read_document(matrix)?;
    let a = d.matrix()?;
    let norm = a.norm();
    let bound = settings.tol.scaled(norm * norm);
    let u = match read_evidence(evidence)? {
        Evidence::Witness(u) => u,
        Evidence::Certificate(cert) => {
            if cert_dim(&cert).is_some_and(|n| n != a.rows()) {
                return Err(InputError("certificate vectors do not match the matrix dimension".into()).into());
            }
            let deviation = cert.recheck(&a)?;
            let valid = deviation <= bound;
            let out = json!({
                "schema_version": doc::SCHEMA_VERSION,
                "name": d.name,
                "certificate": cert.kind_name(),
                "recheck_deviation": deviation,
                "bound": bound,
                "gap": cert.gap(),
                "valid": valid,
            });
            emit(settings, &out, || {
                format!(
                    "{}: {} certificate {} (deviation {deviation:.2e}, gap {:.3e})",
                    d.label(),
                    cert.kind_name(),
                    if valid { "confirmed" } else { "rejected" },
                    cert.gap()
                )
            });
            return Ok(if valid { EXIT_YES } else { EXIT_NO });
        }
    };
    if u.rows() != a.rows() {
        return Err(InputError(format!(
            "conjugation is {}x{}, matrix is {}x{}",
            u.rows(),
            u.cols(),
            a.rows(),
            a.cols()
        ))
        .into());
    }
    let c = Conjugation64::from_u_unchecked(u);
    let r = verify_conjugation(&c);
    let conj_bound = settings.tol.residual_abs * (a.rows() as f64).sqrt().max(1.0);
    let normal = is_c_normal(&a, &c)?;
    let valid = r.isometry <= conj_bound && r.involution <= conj_bound && normal <= bound;
    let out = json!({
        "schema_version": doc::SCHEMA_VERSION,
        "name": d.name,
        "isometry": r.isometry,
        "involution": r.involution,
        "conjugation_bound": conj_bound,
        "c_normal_residual": normal,
        "c_normal_bound": bound,
        "valid": valid,
    });
    emit(settings, &out, || {
        format!(
            "{}: {} (isometry {:.2e}, involution {:.2e}, C-normal residual {normal:.2e})",
            d.label(),
            if valid { "valid" } else { "invalid" },
            r.isometry,
            r.involution
        )
    });
    Ok(if valid { EXIT_YES } else { EXIT_NO })
}

fn cert_dim(c: &ObstructionCertificate<f64>) -> Option<usize> {
    match c {
        ObstructionCertificate::Modulus { f, .. } => Some(f.0.len()),
        ObstructionCertificate::PhaseCycle { f, .. } => f.first().map(|v| v.len()),
        ObstructionCertificate::WordTrace { .. } => None,
    }
}

pub fn generate(kind: &str, dim: usize, variant: usize, seed: u64, settings: &Settings) -> Result<u8, Failure> {
    if dim == 0 {
        return Err(InputError("--dim must be at least 1".into()).into());
    }
    let mut r = random::rng(seed);
    let source = Some(format!("seed {seed}"));
    let doc = match kind {
        "random-normal" => {
            MatrixDocument::from_matrix(&random::normal::<f64, _>(&mut r, dim)).named("random-normal", source)
        }
        "random-conjugation" => {
            let c = random::conjugation::<f64, _>(&mut r, dim);
            MatrixDocument::from_matrix(c.matrix()).named("random-conjugation", source)
        }
        "block-corollary" => {
            if variant > 3 {
                return Err(InputError("--variant must be 0, 1, 2 or 3".into()).into());
            }
            let u = random::unitary::<f64, _>(&mut r, dim);
            let v = random::unitary::<f64, _>(&mut r, dim);
            let rr = ComplexMatrix::outer(&random::vector(&mut r, dim), &random::vector(&mut r, dim));
            let specs = corollary_block_specs(&u, &v, &rr, &settings.tol)?;
            let spec = &specs[variant];
            MatrixDocument::from_matrix(&spec.operator())
                .named(format!("block-corollary-{variant}"), source)
                .with_perturbation(spec)
        }
        name => match cnormal::fixtures::by_name::<f64>(name) {
            Some(ex) => MatrixDocument::from_example(&ex),
            None => {
                return Err(InputError(format!(
                    "unknown kind {name:?}; expected block-corollary, random-normal, random-conjugation or one of {:?}",
                    cnormal::fixtures::NAMES
                ))
                .into())
            }
        },
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
    Ok(EXIT_YES)
}

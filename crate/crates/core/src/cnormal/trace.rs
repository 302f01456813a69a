use crate::error::Result;
use crate::foundation::{Matrix, ToleranceConfig};
use crate::scalar::{Real, C};

use super::decide::{decide_gs_with, DecideOptions, GsVerdict, VerdictKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsVerdict {
    NotComplexSymmetric,
    /// The functional vanishes; it is only a necessary condition.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsTrace<T> {
    pub value: C<T>,
    pub threshold: T,
    pub verdict: CsVerdict,
}

/// `t = tr(A²·(A·A*² − A*²·A)·A²·A*)`, which vanishes for every complex
/// symmetric `A`. A nonzero value (beyond `residual_abs·(1+‖A‖⁷)`) proves
/// `A` is not complex symmetric.
pub fn cs_trace_test<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<CsTrace<T>> {
    a.validate_operator()?;
    let s = a.adjoint();
    let a2 = a.matmul(a);
    let s2 = s.matmul(&s);
    let comm = &a.matmul(&s2) - &s2.matmul(a);
    let value = a2.matmul(&comm).matmul(&a2).matmul(&s).trace();
    let threshold = tol.scaled(a.norm().powi(7));
    let verdict = if value.norm() > threshold {
        CsVerdict::NotComplexSymmetric
    } else {
        CsVerdict::Inconclusive
    };
    Ok(CsTrace {
        value,
        threshold,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationProbe<T> {
    pub in_gs: GsVerdict<T>,
    pub cs_probe: CsTrace<T>,
    /// In GS yet provably not complex symmetric.
    pub gs_but_not_cs: bool,
}

pub fn gs_separation_probe<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<SeparationProbe<T>> {
    gs_separation_probe_with(a, tol, &DecideOptions::default())
}

pub fn gs_separation_probe_with<T: Real>(
    a: &Matrix<T>,
    tol: &ToleranceConfig<T>,
    opts: &DecideOptions,
) -> Result<SeparationProbe<T>> {
    let in_gs = decide_gs_with(a, tol, opts)?;
    let cs_probe = cs_trace_test(a, tol)?;
    let gs_but_not_cs = in_gs.kind == VerdictKind::Yes && cs_probe.verdict == CsVerdict::NotComplexSymmetric;
    Ok(SeparationProbe {
        in_gs,
        cs_probe,
        gs_but_not_cs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    #[test]
    fn example1_trace_is_four() {
        let t = cs_trace_test(&fixtures::example1::<f64>().a, &tol()).unwrap();
        assert!((t.value.re - 4.0).abs() < 1e-12 && t.value.im.abs() < 1e-12);
        assert_eq!(t.verdict, CsVerdict::NotComplexSymmetric);
    }

    #[test]
    fn symmetric_inputs_vanish() {
        let mut r = random::rng(5);
        let h: Matrix<f64> = random::hermitian(&mut r, 4);
        assert_eq!(cs_trace_test(&h, &tol()).unwrap().verdict, CsVerdict::Inconclusive);
        let m: Matrix<f64> = random::matrix(&mut r, 4);
        let sym = (&m + &m.transpose()).scale_real(0.5);
        let t = cs_trace_test(&sym, &tol()).unwrap();
        assert_eq!(t.verdict, CsVerdict::Inconclusive, "{:?}", t.value);
    }

    #[test]
    fn separation_on_fixtures() {
        let p = gs_separation_probe(&fixtures::example1::<f64>().a, &tol()).unwrap();
        assert!(p.gs_but_not_cs);
        let p = gs_separation_probe(&Matrix::<f64>::diag_real(&[1.0, 2.0]), &tol()).unwrap();
        assert_eq!(
            (p.in_gs.kind, p.cs_probe.verdict),
            (VerdictKind::Yes, CsVerdict::Inconclusive)
        );
        let p = gs_separation_probe(&fixtures::example2::<f64>().a, &tol()).unwrap();
        assert_eq!(p.in_gs.kind, VerdictKind::No);
        assert!(!p.gs_but_not_cs);
    }
}

//! Rank-one perturbations `N + λ·y⊗x` of a normal `N`: hypothesis checks,
//! explicit witness conjugations, and the operator families built on them.

use std::fmt;

use crate::conjugation::{conj_angl, conjugation_mapping_pairs, is_c_normal, Conjugation};
use crate::error::{Error, Result};
use crate::foundation::{inner, normality_residual, svd, vnorm, vscale, Matrix, ToleranceConfig, Vector};
use crate::scalar::{cr, Real, C};
use crate::spectral::{block_polar, spectral_measure_abs, SpectralMeasureAbs};

/// Data of the perturbation `N + λ·y⊗x`.
#[derive(Debug, Clone)]
pub struct PerturbationSpec<T> {
    pub n: Matrix<T>,
    pub x: Vector<T>,
    pub y: Vector<T>,
    pub lambda: C<T>,
}

impl<T: Real> PerturbationSpec<T> {
    pub fn new(n: Matrix<T>, x: Vector<T>, y: Vector<T>, lambda: C<T>, tol: &ToleranceConfig<T>) -> Result<Self> {
        n.validate_operator()?;
        for v in [&x, &y] {
            if v.len() != n.rows() {
                return Err(Error::DimensionMismatch {
                    expected: n.rows(),
                    found: v.len(),
                });
            }
            if let Some(i) = v.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::NonFinite { row: i, col: 0 });
            }
        }
        let norm = n.norm();
        let res = normality_residual(&n);
        if res > tol.scaled(norm * norm) {
            return Err(Error::NotNormal {
                residual: res.to_f64_lossy(),
            });
        }
        Ok(Self { n, x, y, lambda })
    }

    /// The perturbed operator `N + λ·y⊗x`.
    pub fn operator(&self) -> Matrix<T> {
        &self.n + &rank_one_unchecked(&self.y, &self.x, self.lambda)
    }
}

/// `λ·y⊗x = λ·y·x*`, the map `v ↦ λ⟨v,x⟩y`.
pub fn rank_one<T: Real>(y: &[C<T>], x: &[C<T>], lambda: C<T>) -> Result<Matrix<T>> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            found: x.len(),
        });
    }
    Ok(rank_one_unchecked(y, x, lambda))
}

fn rank_one_unchecked<T: Real>(y: &[C<T>], x: &[C<T>], lambda: C<T>) -> Matrix<T> {
    Matrix::outer(y, x).scale(lambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `⟨N·E(Δ)x, x⟩ = ⟨N·E(Δ)y, y⟩`.
    I,
    /// `⟨E(Δ)x, x⟩ = ⟨E(Δ)y, y⟩`.
    II,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::I => write!(f, "(i)"),
            Condition::II => write!(f, "(ii)"),
        }
    }
}

/// Both conditions evaluated at one atom `Δ = {s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomCheck {
    pub s: f64,
    /// `(re, im)` of `⟨N·Eₛx, x⟩` and `⟨N·Eₛy, y⟩`.
    pub cond_i: ((f64, f64), (f64, f64)),
    /// `⟨Eₛx, x⟩` and `⟨Eₛy, y⟩` (real).
    pub cond_ii: (f64, f64),
}

impl AtomCheck {
    pub fn gap_i(&self) -> f64 {
        let ((a, b), (c, d)) = self.cond_i;
        (a - c).hypot(b - d)
    }

    pub fn gap_ii(&self) -> f64 {
        (self.cond_ii.0 - self.cond_ii.1).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisFailure {
    pub condition: Condition,
    pub s: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub atoms: Vec<AtomCheck>,
    pub norm_x: f64,
    pub norm_y: f64,
    /// `|N| = I`, in which case the single atom reduces the check to
    /// `‖x‖ = ‖y‖` and `⟨Nx,x⟩ = ⟨Ny,y⟩`.
    pub unitary: bool,
    pub threshold: f64,
    pub pass: bool,
}

impl HypothesisReport {
    pub fn failures(&self) -> Vec<HypothesisFailure> {
        let mut out = Vec::new();
        for a in &self.atoms {
            if a.gap_i() > self.threshold {
                out.push(HypothesisFailure {
                    condition: Condition::I,
                    s: a.s,
                    gap: a.gap_i(),
                });
            }
            if a.gap_ii() > self.threshold {
                out.push(HypothesisFailure {
                    condition: Condition::II,
                    s: a.s,
                    gap: a.gap_ii(),
                });
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let f = self.failures();
        if f.is_empty() {
            return "all conditions hold".to_string();
        }
        f.iter()
            .map(|f| format!("condition {} fails at s = {:.6} (gap {:.3e})", f.condition, f.s, f.gap))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Per-atom tolerance `residual_abs·(1+‖N‖)·(1+‖x‖²+‖y‖²)`.
fn hypothesis_threshold<T: Real>(spec: &PerturbationSpec<T>, tol: &ToleranceConfig<T>) -> T {
    let nx = vnorm(&spec.x);
    let ny = vnorm(&spec.y);
    tol.scaled(spec.n.norm()) * (T::one() + nx * nx + ny * ny)
}

fn report_with<T: Real>(
    spec: &PerturbationSpec<T>,
    e: &SpectralMeasureAbs<T>,
    tol: &ToleranceConfig<T>,
) -> HypothesisReport {
    let pair = |z: C<T>| (z.re.to_f64_lossy(), z.im.to_f64_lossy());
    let mut atoms = Vec::with_capacity(e.atoms().len());
    for a in e.atoms() {
        let fs = &a.frame;
        let xs = fs.adjoint().mul_vec(&spec.x);
        let ys = fs.adjoint().mul_vec(&spec.y);
        let block = fs.adjoint().matmul(&spec.n).matmul(fs);
        let ix = inner(&block.mul_vec(&xs), &xs);
        let iy = inner(&block.mul_vec(&ys), &ys);
        atoms.push(AtomCheck {
            s: a.s.to_f64_lossy(),
            cond_i: (pair(ix), pair(iy)),
            cond_ii: (inner(&xs, &xs).re.to_f64_lossy(), inner(&ys, &ys).re.to_f64_lossy()),
        });
    }
    let unitary = e.atoms().len() == 1 && (e.atoms()[0].s - T::one()).abs() <= tol.eig_cluster_rel * T::lit(10.0);
    let threshold = hypothesis_threshold(spec, tol).to_f64_lossy();
    let mut report = HypothesisReport {
        atoms,
        norm_x: vnorm(&spec.x).to_f64_lossy(),
        norm_y: vnorm(&spec.y).to_f64_lossy(),
        unitary,
        threshold,
        pass: false,
    };
    report.pass = report.failures().is_empty();
    report
}

/// Evaluates conditions (i) and (ii) at every atom of `E_{|N|}`; by
/// additivity this covers every Borel set.
pub fn check_hypotheses<T: Real>(spec: &PerturbationSpec<T>, tol: &ToleranceConfig<T>) -> Result<HypothesisReport> {
    let e = spectral_measure_abs(&spec.n, tol)?;
    Ok(report_with(spec, &e, tol))
}

/// A conjugation `C` with `C·A*A·C = AA*` for `A = N + λ·y⊗x`, together
/// with its verified residual.
#[derive(Debug, Clone)]
pub struct Witness<T> {
    pub conjugation: Conjugation<T>,
    pub residual: T,
    pub report: HypothesisReport,
}

/// Builds the witness block by block.
///
/// After scaling `x`, `y` by `1/‖x‖`, each atom `s > 0` with polar block
/// `U` receives `conj_angl(U, Fₛ*x, Fₛ*y)`, and the zero atom a norm-matched
/// conjugation `Fₛ*x ↦ Fₛ*y`. The witness `F·(⊕uₛ)·Fᵀ` does not depend on `λ`:
/// `C·x = y` and `C·N·x = N*·y` are all that the perturbation terms need.
pub fn build_witness<T: Real>(spec: &PerturbationSpec<T>, tol: &ToleranceConfig<T>) -> Result<Witness<T>> {
    let e = spectral_measure_abs(&spec.n, tol)?;
    let report = report_with(spec, &e, tol);
    if !report.pass {
        return Err(Error::HypothesesFailed(Box::new(report)));
    }
    let d = spec.n.rows();
    let nx = vnorm(&spec.x);
    let trivial = nx <= tol.residual_abs && vnorm(&spec.y) <= tol.residual_abs;
    let (xh, yh) = if trivial {
        (vec![cr(T::zero()); d], vec![cr(T::zero()); d])
    } else {
        let k = cr(T::one() / nx);
        (vscale(&spec.x, k), vscale(&spec.y, k))
    };
    let mut u = Matrix::zeros(d, d);
    for (i, a) in e.atoms().iter().enumerate() {
        let fs = &a.frame;
        let xs = fs.adjoint().mul_vec(&xh);
        let ys = fs.adjoint().mul_vec(&yh);
        let cs = if a.s == T::zero() {
            conjugation_mapping_pairs(&xs, &ys, None, None, tol)?
        } else {
            let (_, ub) = block_polar(&e, i)?;
            conj_angl(&ub, &xs, &ys, tol)?
        };
        u = &u + &cs.lift_partial(fs);
    }
    let c = Conjugation::from_u_unchecked(u);
    let a = spec.operator();
    let residual = is_c_normal(&a, &c)?;
    let scale = T::one() + spec.n.norm() + spec.lambda.norm() * nx * vnorm(&spec.y);
    if residual > tol.residual_abs * scale * scale {
        return Err(Error::WitnessResidual {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(Witness {
        conjugation: c,
        residual,
        report,
    })
}

/// `W = [[0, V], [U, 0]]`.
fn block_unitary<T: Real>(u: &Matrix<T>, v: &Matrix<T>) -> Matrix<T> {
    let k = u.rows();
    let z = Matrix::zeros(k, k);
    Matrix::block2(&z, v, u, &z)
}

fn check_unitary<T: Real>(m: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<()> {
    m.validate_operator()?;
    let r = m.unitarity_residual();
    if r > tol.scaled(T::lit(m.rows() as f64).sqrt()) {
        return Err(Error::NotUnitary {
            residual: r.to_f64_lossy(),
        });
    }
    Ok(())
}

/// `(σ, w, v)` with `R = σ·w·v*`, or `σ = 0` when `R` vanishes.
fn rank_one_parts<T: Real>(r: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<(T, Vector<T>, Vector<T>)> {
    let s = svd(r);
    let smax = s.sigma_max();
    let k = r.rows();
    if smax <= tol.residual_abs {
        return Ok((T::zero(), vec![cr(T::zero()); k], vec![cr(T::zero()); k]));
    }
    let rank = s.rank_above(tol.rank_rel.max(tol.residual_abs) * smax);
    if rank != 1 {
        return Err(Error::NotRankOne { rank });
    }
    Ok((s.sigma[0], s.w.column(0), s.v.column(0)))
}

/// The four operators on `K ⊕ K`
/// `[[R,V],[U,0]]`, `[[0,V+R],[U,0]]`, `[[0,V],[U+R,0]]`, `[[0,V],[U,R]]`.
pub fn corollary_blocks<T: Real>(
    u: &Matrix<T>,
    v: &Matrix<T>,
    r: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<[Matrix<T>; 4]> {
    let specs = corollary_block_specs(u, v, r, tol)?;
    Ok(specs.map(|s| s.operator()))
}

/// Each corollary block as `W + λ·y⊗x` with `W = [[0,V],[U,0]]` unitary and
/// `x`, `y` each supported in one summand, so `⟨Wx,x⟩ = 0 = ⟨Wy,y⟩`.
pub fn corollary_block_specs<T: Real>(
    u: &Matrix<T>,
    v: &Matrix<T>,
    r: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<[PerturbationSpec<T>; 4]> {
    check_unitary(u, tol)?;
    check_unitary(v, tol)?;
    let k = u.rows();
    for m in [v, r] {
        if m.rows() != k || m.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: m.rows(),
            });
        }
    }
    let (sigma, w, vv) = rank_one_parts(r, tol)?;
    let w_op = block_unitary(u, v);
    let zeros = vec![cr(T::zero()); k];
    let top = |z: &Vector<T>| -> Vector<T> { z.iter().copied().chain(zeros.iter().copied()).collect() };
    let bottom = |z: &Vector<T>| -> Vector<T> { zeros.iter().copied().chain(z.iter().copied()).collect() };
    // (row block of y, column block of x) for R in each position.
    let placements = [(true, true), (true, false), (false, true), (false, false)];
    let lambda = cr(sigma);
    let make = |(y_top, x_top): (bool, bool)| -> Result<PerturbationSpec<T>> {
        let y = if y_top { top(&w) } else { bottom(&w) };
        let x = if x_top { top(&vv) } else { bottom(&vv) };
        PerturbationSpec::new(w_op.clone(), x, y, lambda, tol)
    };
    Ok([
        make(placements[0])?,
        make(placements[1])?,
        make(placements[2])?,
        make(placements[3])?,
    ])
}

/// The perturbation `N + λ·(Vx)⊗x` for a partial isometry `V` commuting with
/// `N` and `x ∈ ker(V)^⊥`.
pub fn partial_isometry_family<T: Real>(
    n: &Matrix<T>,
    v: &Matrix<T>,
    x: &[C<T>],
    lambda: C<T>,
    tol: &ToleranceConfig<T>,
) -> Result<PerturbationSpec<T>> {
    n.validate_operator()?;
    v.validate_operator()?;
    if v.rows() != n.rows() {
        return Err(Error::DimensionMismatch {
            expected: n.rows(),
            found: v.rows(),
        });
    }
    if x.len() != n.rows() {
        return Err(Error::DimensionMismatch {
            expected: n.rows(),
            found: x.len(),
        });
    }
    let vv = v.adjoint().matmul(v);
    let pi = vv.matmul(&vv).dist(&vv);
    if pi > tol.scaled(vv.norm()) {
        return Err(Error::NotPartialIsometry {
            residual: pi.to_f64_lossy(),
        });
    }
    let comm = v.matmul(n).dist(&n.matmul(v));
    if comm > tol.scaled(v.norm() * n.norm()) {
        return Err(Error::NotCommuting {
            residual: comm.to_f64_lossy(),
        });
    }
    let off = vnorm(&(&Matrix::identity(n.rows()) - &vv).mul_vec(x));
    if off > tol.scaled(vnorm(x)) {
        return Err(Error::NotInCokernel {
            residual: off.to_f64_lossy(),
        });
    }
    PerturbationSpec::new(n.clone(), x.to_vec(), v.mul_vec(x), lambda, tol)
}

/// `N + R` for a rank-one `R` commuting with `N`. Writing `R = σ·w·v*`
/// (unit `w`, `v`), the spec is `λ = σ`, `y = w`, `x = v`.
pub fn commuting_rank_one_family<T: Real>(
    n: &Matrix<T>,
    r: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<PerturbationSpec<T>> {
    n.validate_operator()?;
    r.validate_operator()?;
    if r.rows() != n.rows() {
        return Err(Error::DimensionMismatch {
            expected: n.rows(),
            found: r.rows(),
        });
    }
    let s = svd(r);
    let rank = s.rank_above(tol.rank_rel.max(tol.residual_abs) * s.sigma_max().max(T::one()));
    if rank != 1 {
        return Err(Error::NotRankOne { rank });
    }
    let comm = r.matmul(n).dist(&n.matmul(r));
    if comm > tol.scaled(r.norm() * n.norm()) {
        return Err(Error::NotCommuting {
            residual: comm.to_f64_lossy(),
        });
    }
    PerturbationSpec::new(n.clone(), s.v.column(0), s.w.column(0), cr(s.sigma[0]), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::foundation::{basis, real_vector};
    use crate::scalar::c;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    #[test]
    fn rank_one_entries() {
        let r = rank_one(&basis::<f64>(3, 0), &basis(3, 1), c(1.0, 0.0)).unwrap();
        let mut expected = Matrix::zeros(3, 3);
        expected[(0, 1)] = c(1.0, 0.0);
        assert_eq!(r, expected);
        assert!(rank_one(&basis::<f64>(3, 0), &basis(2, 1), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn worked_example_decompositions() {
        for ex in [fixtures::example1(), fixtures::example2(), fixtures::example3()] {
            let spec = ex.spec(&tol()).unwrap();
            assert!(spec.operator().dist(&ex.a) < 1e-15, "{}", ex.name);
        }
    }

    #[test]
    fn example1_passes() {
        let spec = fixtures::example1().spec(&tol()).unwrap();
        let report = check_hypotheses(&spec, &tol()).unwrap();
        assert!(report.pass, "{}", report.summary());
        assert!(report.unitary);
        let w = build_witness(&spec, &tol()).unwrap();
        assert!(w.residual <= 1e-8);
        assert!(w.conjugation.residuals().max() <= 1e-10);
    }

    #[test]
    fn example2_fails_condition_ii() {
        let spec = fixtures::example2().spec(&tol()).unwrap();
        let report = check_hypotheses(&spec, &tol()).unwrap();
        assert!(!report.pass);
        let f = report.failures();
        assert!(f.iter().all(|f| f.condition == Condition::II));
        let at1 = f.iter().find(|f| (f.s - 1.0).abs() < 1e-12).unwrap();
        assert!((at1.gap - 1.0).abs() < 1e-9);
        match build_witness(&spec, &tol()) {
            Err(Error::HypothesesFailed(r)) => assert!(r.summary().contains("(ii)")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn example3_fails_condition_i() {
        let spec = fixtures::example3().spec(&tol()).unwrap();
        let report = check_hypotheses(&spec, &tol()).unwrap();
        let f = report.failures();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].condition, Condition::I);
        let ((a, b), (cc, d)) = report.atoms[0].cond_i;
        assert!((a - 1.0).abs() < 1e-9 && b.abs() < 1e-9);
        assert!((cc + 0.5).abs() < 1e-9 && (d - 0.5).abs() < 1e-9);
    }

    #[test]
    fn zero_lambda_and_zero_vectors() {
        let ex = fixtures::example1();
        let mut spec = ex.spec(&tol()).unwrap();
        spec.lambda = c(0.0, 0.0);
        let w = build_witness(&spec, &tol()).unwrap();
        assert!(w.residual <= 1e-10);
        let n = Matrix::<f64>::diag_real(&[1.0, -1.0, 0.0]);
        let z = vec![c(0.0, 0.0); 3];
        let spec = PerturbationSpec::new(n, z.clone(), z, c(3.0, 0.0), &tol()).unwrap();
        assert!(build_witness(&spec, &tol()).unwrap().residual <= 1e-12);
    }

    #[test]
    fn zero_atom_branch() {
        let n = Matrix::<f64>::diag_real(&[1.0, -1.0, 0.0]);
        let e3 = basis::<f64>(3, 2);
        let spec = PerturbationSpec::new(n, e3.clone(), e3, c(2.0, 1.0), &tol()).unwrap();
        let w = build_witness(&spec, &tol()).unwrap();
        assert!(w.residual <= 1e-10);
    }

    #[test]
    fn corollary_blocks_from_identity() {
        let i2 = Matrix::<f64>::identity(2);
        let r = Matrix::outer(&basis::<f64>(2, 0), &basis(2, 0));
        let specs = corollary_block_specs(&i2, &i2, &r, &tol()).unwrap();
        let blocks = corollary_blocks(&i2, &i2, &r, &tol()).unwrap();
        assert!(blocks[0].dist(&fixtures::unitary_block().a) < 1e-15);
        for (spec, b) in specs.iter().zip(&blocks) {
            assert!(spec.operator().dist(b) < 1e-14);
            assert!(check_hypotheses(spec, &tol()).unwrap().pass);
            assert!(build_witness(spec, &tol()).unwrap().residual <= 1e-8);
        }
        let zero = Matrix::zeros(2, 2);
        let w = corollary_blocks(&i2, &i2, &zero, &tol()).unwrap();
        assert!(w.iter().all(|b| b.dist(&w[0]) == 0.0));
        let two = Matrix::<f64>::identity(2);
        assert!(matches!(
            corollary_blocks(&i2, &i2, &two, &tol()),
            Err(Error::NotRankOne { rank: 2 })
        ));
        let bad = Matrix::<f64>::diag_real(&[1.0, 2.0]);
        assert!(matches!(
            corollary_blocks(&bad, &i2, &r, &tol()),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn partial_isometry_cases() {
        let n = Matrix::<f64>::diag_real(&[1.0, 1.0, 2.0]);
        let v = Matrix::<f64>::from_real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
        let x = basis::<f64>(3, 0);
        let spec = partial_isometry_family(&n, &v, &x, c(1.5, 0.0), &tol()).unwrap();
        assert!(check_hypotheses(&spec, &tol()).unwrap().pass);
        assert!(build_witness(&spec, &tol()).unwrap().residual <= 1e-8);
        let id = Matrix::identity(3);
        let y = real_vector::<f64>(&[0.3, -1.0, 2.0]);
        assert!(
            check_hypotheses(
                &partial_isometry_family(&n, &id, &y, c(1.0, 0.0), &tol()).unwrap(),
                &tol()
            )
            .unwrap()
            .pass
        );
        let swap13 = Matrix::<f64>::from_real_rows(&[&[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]]);
        assert!(matches!(
            partial_isometry_family(&n, &swap13, &x, c(1.0, 0.0), &tol()),
            Err(Error::NotCommuting { .. })
        ));
        let e3 = basis::<f64>(3, 2);
        assert!(matches!(
            partial_isometry_family(&n, &v, &e3, c(1.0, 0.0), &tol()),
            Err(Error::NotInCokernel { .. })
        ));
        let twice = v.scale_real(2.0);
        assert!(matches!(
            partial_isometry_family(&n, &twice, &x, c(1.0, 0.0), &tol()),
            Err(Error::NotPartialIsometry { .. })
        ));
    }

    #[test]
    fn commuting_rank_one_cases() {
        let n = Matrix::<f64>::diag_real(&[1.0, 2.0, 3.0]);
        let r = Matrix::outer(&basis::<f64>(3, 1), &basis(3, 1)).scale_real(5.0);
        let spec = commuting_rank_one_family(&n, &r, &tol()).unwrap();
        assert!(spec.operator().dist(&(&n + &r)) < 1e-13);
        assert!(check_hypotheses(&spec, &tol()).unwrap().pass);
        assert!(build_witness(&spec, &tol()).unwrap().residual <= 1e-8);
        let bad = Matrix::outer(&basis::<f64>(3, 0), &basis(3, 1));
        assert!(matches!(
            commuting_rank_one_family(&n, &bad, &tol()),
            Err(Error::NotCommuting { .. })
        ));
        let id = Matrix::<f64>::identity(3);
        let any = Matrix::outer(&real_vector::<f64>(&[1.0, 2.0, 0.5]), &real_vector(&[0.0, -1.0, 1.0]));
        let spec = commuting_rank_one_family(&id, &any, &tol()).unwrap();
        assert!(check_hypotheses(&spec, &tol()).unwrap().pass);
    }

    #[test]
    fn rejects_non_normal_spec() {
        let ex = fixtures::example2();
        let e = PerturbationSpec::new(ex.a.clone(), ex.x.clone(), ex.y.clone(), c(1.0, 0.0), &tol());
        assert!(matches!(e, Err(Error::NotNormal { .. })));
    }
}

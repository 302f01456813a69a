//! Conjugations (antiunitary involutions) on `Cⁿ`.
//!
//! A conjugation is stored as the matrix `u` of the encoding
//! `C(x) = u · conj(x)`. `C` is isometric exactly when `u` is unitary and, given
//! that, involutive exactly when `u = uᵀ`.

use crate::error::{Error, Result};
use crate::foundation::{
    canonical_frame, inner, orthocomplement, project_out, svd, unit, vconj, vdist, vnorm, vscale, vsub, Matrix,
    Subspace, ToleranceConfig, Vector,
};
use crate::scalar::{cr, Real, C};

#[derive(Debug, Clone, PartialEq)]
pub struct Conjugation<T> {
    u: Matrix<T>,
}

/// Axiom residuals of a candidate conjugation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugationResiduals<T> {
    /// `‖u*u − I‖`.
    pub isometry: T,
    /// `‖u·conj(u) − I‖`.
    pub involution: T,
}

impl<T: Real> ConjugationResiduals<T> {
    pub fn max(&self) -> T {
        self.isometry.max(self.involution)
    }
}

impl<T: Real> Conjugation<T> {
    /// Validates `u` as a symmetric unitary within `residual_abs`.
    pub fn new(u: Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Self> {
        u.validate_operator()?;
        let c = Self { u };
        let r = c.residuals();
        if r.isometry > tol.residual_abs * T::lit(c.dim() as f64).sqrt().max(T::one()) {
            return Err(Error::NotUnitary {
                residual: r.isometry.to_f64_lossy(),
            });
        }
        if r.involution > tol.residual_abs * T::lit(c.dim() as f64).sqrt().max(T::one()) {
            return Err(Error::NotInvolutive {
                residual: r.involution.to_f64_lossy(),
            });
        }
        Ok(c)
    }

    /// Skips validation; inspect [`Conjugation::residuals`] before trusting it.
    pub fn from_u_unchecked(u: Matrix<T>) -> Self {
        Self { u }
    }

    pub fn standard(dim: usize) -> Self {
        Self {
            u: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.u
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.u
    }

    pub fn apply(&self, x: &[C<T>]) -> Result<Vector<T>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(self.u.mul_vec(&vconj(x)))
    }

    pub fn residuals(&self) -> ConjugationResiduals<T> {
        let n = self.dim();
        let id = Matrix::identity(n);
        ConjugationResiduals {
            isometry: self.u.adjoint().matmul(&self.u).dist(&id),
            involution: self.u.matmul(&self.u.conj()).dist(&id),
        }
    }

    /// Matrix of the linear operator `C·M·C`, i.e. `u·conj(M)·conj(u)`.
    pub fn sandwich(&self, m: &Matrix<T>) -> Matrix<T> {
        self.u.matmul(&m.conj()).matmul(&self.u.conj())
    }

    /// The conjugation `W·C·W*` for unitary `W`, encoded by `W·u·Wᵀ`.
    pub fn transport(&self, w: &Matrix<T>) -> Self {
        Self {
            u: w.matmul(&self.u).matmul(&w.transpose()),
        }
    }

    /// Lifts a conjugation on the coordinates of an orthonormal frame `F`
    /// (`n×k`) to an operator on `Cⁿ` that acts as `C` on `ran F` and as zero
    /// on its complement: `F·u·Fᵀ`.
    pub(crate) fn lift_partial(&self, frame: &Matrix<T>) -> Matrix<T> {
        frame.matmul(&self.u).matmul(&frame.transpose())
    }
}

pub fn apply<T: Real>(c: &Conjugation<T>, x: &[C<T>]) -> Result<Vector<T>> {
    c.apply(x)
}

pub fn standard_conjugation<T: Real>(dim: usize) -> Conjugation<T> {
    Conjugation::standard(dim)
}

pub fn verify_conjugation<T: Real>(c: &Conjugation<T>) -> ConjugationResiduals<T> {
    c.residuals()
}

/// The conjugation with `C·fᵢ = gᵢ` for unitary frames `F`, `G`:
/// `u = G·Fᵀ`, accepted only when symmetric.
pub fn conjugation_from_basis_map<T: Real>(
    f: &Matrix<T>,
    g: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Conjugation<T>> {
    f.validate_operator()?;
    g.validate_operator()?;
    if f.rows() != g.rows() {
        return Err(Error::DimensionMismatch {
            expected: f.rows(),
            found: g.rows(),
        });
    }
    for m in [f, g] {
        let r = m.unitarity_residual();
        if r > tol.scaled(T::zero()) * T::lit(m.rows() as f64).sqrt() {
            return Err(Error::NotUnitary {
                residual: r.to_f64_lossy(),
            });
        }
    }
    let u = g.matmul(&f.transpose());
    let asym = u.dist(&u.transpose());
    if asym > tol.residual_abs * T::lit(u.rows() as f64).sqrt() {
        return Err(Error::NotInvolutive {
            residual: asym.to_f64_lossy(),
        });
    }
    Ok(Conjugation::from_u_unchecked(u))
}

fn near_zero<T: Real>(v: &[C<T>], tol: &ToleranceConfig<T>) -> bool {
    vnorm(v) <= tol.residual_abs
}

/// A conjugation with `Cx = y` and `Ca = b` (hence also `Cy = x`, `Cb = a`).
///
/// Requires `‖x‖ = ‖y‖`, `‖a‖ = ‖b‖`, `x ⟂ a`, `y ⟂ b` and the Gram condition
/// `⟨x,b⟩ = ⟨a,y⟩`. A pair whose source vector is zero (or absent) imposes no
/// constraint. On `span{x,a,y,b}` the antilinear map is fixed by the four
/// assignments; on the orthogonal complement it is the standard conjugation
/// of a Gram–Schmidt basis.
pub fn conjugation_mapping_pairs<T: Real>(
    x: &[C<T>],
    y: &[C<T>],
    a: Option<&[C<T>]>,
    b: Option<&[C<T>]>,
    tol: &ToleranceConfig<T>,
) -> Result<Conjugation<T>> {
    let n = x.len();
    for v in [Some(y), a, b].into_iter().flatten() {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let mut sources: Vec<Vector<T>> = Vec::new();
    let mut images: Vec<Vector<T>> = Vec::new();
    let mut push_pair = |s: &[C<T>], t: &[C<T>]| -> Result<()> {
        let (ns, nt) = (vnorm(s), vnorm(t));
        if (ns - nt).abs() > tol.scaled(ns.max(nt)) {
            return Err(Error::NormMismatch {
                left: ns.to_f64_lossy(),
                right: nt.to_f64_lossy(),
            });
        }
        if near_zero(s, tol) {
            return Ok(());
        }
        sources.push(s.to_vec());
        images.push(t.to_vec());
        Ok(())
    };
    push_pair(x, y)?;
    if let (Some(a), Some(b)) = (a, b) {
        push_pair(a, b)?;
        let scale = T::one() + vnorm(x) * vnorm(a);
        let xa = inner(x, a).norm();
        let yb = inner(y, b).norm();
        if xa.max(yb) > tol.residual_abs * scale {
            return Err(Error::NotOrthogonal {
                overlap: xa.max(yb).to_f64_lossy(),
            });
        }
        let gap = (inner(x, b) - inner(a, y)).norm();
        if gap > tol.residual_abs * scale {
            return Err(Error::GramMismatch {
                gap: gap.to_f64_lossy(),
            });
        }
    }
    // Close the assignment under the involution: C maps images back to sources.
    let k = sources.len();
    for i in 0..k {
        let (s, t) = (sources[i].clone(), images[i].clone());
        sources.push(t);
        images.push(s);
    }

    let span = Subspace::orthonormalize(n, &sources, T::lit(1e-9));
    let q = span.frame().clone();
    let r = q.cols();
    let mut u = Matrix::zeros(n, n);
    if r > 0 {
        let src = Matrix::from_columns(n, &sources);
        let img = Matrix::from_columns(n, &images);
        // In Q-coordinates the map reads c ↦ T·conj(c); solve T·conj(R) = S.
        let rc = q.adjoint().matmul(&src).conj();
        let s = q.adjoint().matmul(&img);
        let t = s.matmul(&pseudo_inverse(&rc));
        u = &u + &q.matmul(&t).matmul(&q.transpose());
    }
    if r < n {
        let rest = canonical_frame(orthocomplement(&span).frame());
        u = &u + &rest.matmul(&rest.transpose());
    }
    let c = Conjugation::from_u_unchecked(u);
    let res = c.residuals();
    let limit = tol.residual_abs * T::lit(n as f64).sqrt().max(T::one());
    if res.involution > limit || res.isometry > limit {
        return Err(Error::NotInvolutive {
            residual: res.max().to_f64_lossy(),
        });
    }
    Ok(c)
}

/// Moore–Penrose inverse via SVD with the default relative cutoff.
fn pseudo_inverse<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    let s = svd(a);
    let thr = T::lit(1e-12) * s.sigma_max();
    let mut out = Matrix::zeros(a.cols(), a.rows());
    for (k, &sig) in s.sigma.iter().enumerate() {
        if sig > thr {
            let vk = s.v.column(k);
            let wk = s.w.column(k);
            out = &out + &Matrix::outer(&vk, &wk).scale_real(T::one() / sig);
        }
    }
    out
}

/// A conjugation with `Cx = y` and `C(Ux) = U*y` for unitary `U`, given
/// `‖x‖ = ‖y‖` and `⟨Ux,x⟩ = ⟨Uy,y⟩`.
///
/// With unit vectors write `Ux = αx + βa`, `U*y = ᾱy + βb` (`β ≥ 0`). When
/// `β = 0` only `x ↦ y` is needed; otherwise `x ↦ y`, `a ↦ b`, for which the
/// Gram condition `⟨x,b⟩ = ⟨a,y⟩` holds automatically.
pub fn conj_angl<T: Real>(u: &Matrix<T>, x: &[C<T>], y: &[C<T>], tol: &ToleranceConfig<T>) -> Result<Conjugation<T>> {
    u.validate_operator()?;
    let n = u.rows();
    if x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if x.len() != n { x.len() } else { y.len() },
        });
    }
    let ur = u.unitarity_residual();
    if ur > tol.scaled(T::lit(n as f64).sqrt()) {
        return Err(Error::HypothesisViolated(format!(
            "U is not unitary (residual {:.3e})",
            ur.to_f64_lossy()
        )));
    }
    let (nx, ny) = (vnorm(x), vnorm(y));
    if (nx - ny).abs() > tol.scaled(nx.max(ny)) {
        return Err(Error::HypothesisViolated(format!(
            "‖x‖ = {:.6e} differs from ‖y‖ = {:.6e}",
            nx.to_f64_lossy(),
            ny.to_f64_lossy()
        )));
    }
    let ux = u.mul_vec(x);
    let uy = u.mul_vec(y);
    let lhs = inner(&ux, x);
    let rhs = inner(&uy, y);
    if (lhs - rhs).norm() > tol.scaled(nx * nx) {
        return Err(Error::HypothesisViolated(format!(
            "⟨Ux,x⟩ = {:.6}{:+.6}i differs from ⟨Uy,y⟩ = {:.6}{:+.6}i",
            lhs.re.to_f64_lossy(),
            lhs.im.to_f64_lossy(),
            rhs.re.to_f64_lossy(),
            rhs.im.to_f64_lossy()
        )));
    }
    if nx <= tol.residual_abs {
        return Ok(Conjugation::standard(n));
    }
    let xh = vscale(x, cr(T::one() / nx));
    let yh = vscale(y, cr(T::one() / nx));
    let uxh = u.mul_vec(&xh);
    let alpha = inner(&uxh, &xh);
    let ra = vsub(&uxh, &vscale(&xh, alpha));
    let beta = vnorm(&ra);
    let c = if beta <= tol.scaled(u.norm()) {
        conjugation_mapping_pairs(&xh, &yh, None, None, tol)?
    } else {
        let a = vscale(&ra, cr(T::one() / beta));
        let ustar_y = u.adjoint().mul_vec(&yh);
        let rb = vsub(&ustar_y, &vscale(&yh, alpha.conj()));
        let b = unit(&rb);
        conjugation_mapping_pairs(&xh, &yh, Some(&a), Some(&b), tol)?
    };
    Ok(c)
}

/// Orthonormal basis fixed pointwise by `C`.
///
/// Candidates `e₁, e₂, …` are projected off the basis built so far (whose span
/// is `C`-invariant, hence so is its complement); each yields `v + Cv` or
/// `i(v − Cv)`, whichever is longer, normalized.
pub fn fixed_real_basis<T: Real>(c: &Conjugation<T>) -> Matrix<T> {
    let n = c.dim();
    let mut cols: Vec<Vector<T>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut best: Option<Vector<T>> = None;
        let mut best_norm = T::zero();
        for i in 0..n {
            let e = crate::foundation::basis(n, i);
            let v = project_out(&cols, &e);
            let nv = vnorm(&v);
            if nv > best_norm {
                best_norm = nv;
                best = Some(v);
            }
        }
        let v = unit(&best.expect("n > 0"));
        let cv = c.u.mul_vec(&vconj(&v));
        let plus: Vector<T> = v.iter().zip(&cv).map(|(a, b)| a + b).collect();
        let minus: Vector<T> = v
            .iter()
            .zip(&cv)
            .map(|(a, b)| (a - b) * C::new(T::zero(), T::one()))
            .collect();
        let w = if vnorm(&plus) >= vnorm(&minus) { plus } else { minus };
        // Re-project to keep the frame orthonormal to working precision.
        let w = project_out(&cols, &w);
        cols.push(unit(&w));
    }
    Matrix::from_columns(n, &cols)
}

/// `‖C·A*·C − A‖`.
pub fn is_c_symmetric<T: Real>(a: &Matrix<T>, c: &Conjugation<T>) -> Result<T> {
    check_dims(a, c)?;
    Ok(c.sandwich(&a.adjoint()).dist(a))
}

/// `‖C·(A*A)·C − AA*‖`.
pub fn is_c_normal<T: Real>(a: &Matrix<T>, c: &Conjugation<T>) -> Result<T> {
    check_dims(a, c)?;
    let ata = a.adjoint().matmul(a);
    let aat = a.matmul(&a.adjoint());
    Ok(c.sandwich(&ata).dist(&aat))
}

fn check_dims<T: Real>(a: &Matrix<T>, c: &Conjugation<T>) -> Result<()> {
    if a.rows() != c.dim() || a.cols() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: a.rows(),
        });
    }
    Ok(())
}

/// `‖Cx − y‖`.
pub fn mapping_residual<T: Real>(c: &Conjugation<T>, x: &[C<T>], y: &[C<T>]) -> Result<T> {
    Ok(vdist(&c.apply(x)?, y))
}

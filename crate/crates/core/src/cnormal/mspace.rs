use crate::error::{Error, Result};
use crate::foundation::{
    abs_pair, kernel_abs, orthocomplement, preimage_in, subspace_intersect, svd, Matrix, Subspace, ToleranceConfig,
};
use crate::scalar::Real;

/// Kernel threshold for the unit-scaled `|A|/σ_max`, `|A*|/σ_max`.
fn kernel_threshold<T: Real>(tol: &ToleranceConfig<T>) -> T {
    T::lit(10.0) * tol.rank_rel
}

/// `(|A|, |A*|)` divided by `σ_max(A)`, or `None` for `A = 0`.
fn scaled_abs<T: Real>(a: &Matrix<T>) -> Option<(Matrix<T>, Matrix<T>, T)> {
    let smax = svd(a).sigma_max();
    if smax == T::zero() {
        return None;
    }
    let (p, q) = abs_pair(a);
    let k = T::one() / smax;
    Some((p.scale_real(k), q.scale_real(k), smax))
}

/// `M(A)` as the orthocomplement of `⋂ₙ ker(|A|ⁿ − |A*|ⁿ)`, `n = 1..dim`.
/// Past `dim` the kernels add nothing: `|A|` and `|A*|` share a minimal
/// polynomial of degree at most `dim`.
pub fn m_space<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Subspace<T>> {
    a.validate_operator()?;
    let d = a.rows();
    let Some((p, q, _)) = scaled_abs(a) else {
        return Ok(Subspace::zero(d));
    };
    let thr = kernel_threshold(tol);
    let mut common = Matrix::identity(d);
    let (mut pn, mut qn) = (Matrix::identity(d), Matrix::identity(d));
    for _ in 0..d {
        if common.cols() == 0 {
            break;
        }
        pn = pn.matmul(&p);
        qn = qn.matmul(&q);
        let diff = &pn - &qn;
        let coeffs = kernel_abs(&diff.matmul(&common), thr);
        common = common.matmul(coeffs.frame());
    }
    let fixed = Subspace::orthonormalize(d, &common.columns(), T::lit(1e-6));
    Ok(orthocomplement(&fixed))
}

/// `M(A)` via the largest subspace on which `|A| = |A*|` and which both
/// leave invariant: start from `ker(|A| − |A*|)` and intersect with the
/// preimages under `|A|` and `|A*|` until the dimension stops shrinking.
pub fn m_space_fixpoint<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Subspace<T>> {
    a.validate_operator()?;
    let d = a.rows();
    let Some((p, q, _)) = scaled_abs(a) else {
        return Ok(Subspace::zero(d));
    };
    let thr = kernel_threshold(tol);
    let inner_tol = ToleranceConfig { rank_rel: thr, ..*tol };
    let mut f = kernel_abs(&(&p - &q), thr);
    loop {
        if f.dim() == 0 {
            break;
        }
        let pre_p = preimage_in(&p, &f, &inner_tol)?;
        let pre_q = preimage_in(&q, &f, &inner_tol)?;
        let next = subspace_intersect(&subspace_intersect(&f, &pre_p, tol)?, &pre_q, tol)?;
        if next.dim() == f.dim() {
            break;
        }
        f = next;
    }
    Ok(orthocomplement(&f))
}

/// `|A|` and `|A*|` compressed to `M(A)`.
#[derive(Debug, Clone)]
pub struct Reduction<T> {
    /// Orthonormal frame of `M(A)` (`n×m`).
    pub frame: Matrix<T>,
    /// Orthonormal frame of `M(A)^⊥`.
    pub complement: Matrix<T>,
    /// `F*·|A|·F`.
    pub p_m: Matrix<T>,
    /// `F*·|A*|·F`.
    pub q_m: Matrix<T>,
    pub abs_a: Matrix<T>,
    pub abs_a_star: Matrix<T>,
    /// Largest off-block norm of `|A|`, `|A*|` with respect to `M(A)`.
    pub off_block: T,
}

pub fn reduce_to_mspace<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Reduction<T>> {
    let m = m_space(a, tol)?;
    reduce_with(a, &m, tol)
}

pub(crate) fn reduce_with<T: Real>(a: &Matrix<T>, m: &Subspace<T>, tol: &ToleranceConfig<T>) -> Result<Reduction<T>> {
    let (p, q) = abs_pair(a);
    let frame = m.frame().clone();
    let complement = orthocomplement(m).into_frame();
    let off_p = complement.adjoint().matmul(&p).matmul(&frame).norm();
    let off_q = complement.adjoint().matmul(&q).matmul(&frame).norm();
    let off_block = off_p.max(off_q);
    if off_block > tol.scaled(p.norm()) {
        return Err(Error::ReductionResidual {
            residual: off_block.to_f64_lossy(),
        });
    }
    // Outside M(A) the two moduli must agree as well.
    let outside = complement.adjoint().matmul(&(&p - &q)).matmul(&complement).norm();
    if outside > tol.scaled(p.norm()) {
        return Err(Error::ReductionResidual {
            residual: outside.to_f64_lossy(),
        });
    }
    Ok(Reduction {
        p_m: frame.adjoint().matmul(&p).matmul(&frame).hermitian_part(),
        q_m: frame.adjoint().matmul(&q).matmul(&frame).hermitian_part(),
        frame,
        complement,
        abs_a: p,
        abs_a_star: q,
        off_block,
    })
}

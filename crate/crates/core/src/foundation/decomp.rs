use super::jacobi::{hermitian_jacobi, svd_jacobi};
use super::matrix::{inner, vnorm, vscale, Matrix, Vector};
use super::subspace::{canonical_frame, Subspace};
use super::tolerance::ToleranceConfig;
use crate::error::{Error, Result};
use crate::scalar::{cr, Real, C};

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig<T> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    /// Unitary; column `i` pairs with `eigenvalues[i]`.
    pub frame: Matrix<T>,
}

impl<T: Real> HermitianEig<T> {
    pub fn reconstruct(&self) -> Matrix<T> {
        let d = Matrix::diag_real(&self.eigenvalues);
        self.frame.matmul(&d).matmul(&self.frame.adjoint())
    }

    /// Index ranges of eigenvalue clusters (chain clustering on the sorted
    /// spectrum with absolute gap `threshold`).
    pub fn clusters(&self, threshold: T) -> Vec<std::ops::Range<usize>> {
        cluster_sorted(&self.eigenvalues, threshold)
    }
}

/// Groups an ascending sequence into maximal runs whose consecutive gaps are
/// at most `threshold` (transitive chain closure).
pub fn cluster_sorted<T: Real>(values: &[T], threshold: T) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > threshold {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Rotates `v` so that its first component of modulus above `1e-8·‖v‖` is
/// real and positive.
pub(crate) fn normalize_phase<T: Real>(v: &mut [C<T>]) {
    let n = vnorm(v);
    if n == T::zero() {
        return;
    }
    if let Some(z) = v.iter().copied().find(|z| z.norm() > T::lit(1e-8) * n) {
        let ph = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x = *x * ph;
        }
    }
}

/// Hermitian eigendecomposition with ascending eigenvalues and
/// deterministic eigenvector phases.
pub fn hermitian_eig<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<HermitianEig<T>> {
    a.validate_operator()?;
    let residual = a.hermitian_residual();
    if residual > tol.scaled(a.norm()) {
        return Err(Error::NotHermitian {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(hermitian_eig_unchecked(a))
}

pub(crate) fn hermitian_eig_unchecked<T: Real>(a: &Matrix<T>) -> HermitianEig<T> {
    let (vals, vecs) = hermitian_jacobi(a);
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap_or(std::cmp::Ordering::Equal));
    let n = a.rows();
    let mut frame = Matrix::zeros(n, n);
    let mut eigenvalues = Vec::with_capacity(n);
    for (k, &i) in order.iter().enumerate() {
        let mut col = vecs.column(i);
        normalize_phase(&mut col);
        frame.set_column(k, &col);
        eigenvalues.push(vals[i]);
    }
    HermitianEig { eigenvalues, frame }
}

/// Singular value decomposition `A = W·diag(σ)·V*` (σ descending).
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub w: Matrix<T>,
    pub sigma: Vec<T>,
    pub v: Matrix<T>,
}

pub fn svd<T: Real>(a: &Matrix<T>) -> Svd<T> {
    let s = svd_jacobi(a);
    Svd {
        w: s.w,
        sigma: s.sigma,
        v: s.v,
    }
}

impl<T: Real> Svd<T> {
    pub fn sigma_max(&self) -> T {
        self.sigma.first().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values strictly above `threshold`.
    pub fn rank_above(&self, threshold: T) -> usize {
        self.sigma.iter().filter(|&&s| s > threshold).count()
    }
}

/// Positive semidefinite square root; eigenvalue noise below zero is clamped.
pub fn psd_sqrt<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Matrix<T>> {
    let eig = hermitian_eig(a, tol)?;
    let min = eig.eigenvalues.first().copied().unwrap_or_else(T::zero);
    if min < -tol.scaled(a.norm()) {
        return Err(Error::NotPsd {
            min_eigenvalue: min.to_f64_lossy(),
        });
    }
    let roots: Vec<T> = eig.eigenvalues.iter().map(|&l| l.max(T::zero()).sqrt()).collect();
    let d = Matrix::diag_real(&roots);
    Ok(eig.frame.matmul(&d).matmul(&eig.frame.adjoint()))
}

/// `(|A|, |A*|)` computed from one SVD of `A`, which keeps both accurate to
/// working precision near the kernel (squaring first would not).
pub fn abs_pair<T: Real>(a: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let s = svd(a);
    let d = Matrix::diag_real(&s.sigma);
    let abs_a = s.v.matmul(&d).matmul(&s.v.adjoint()).hermitian_part();
    let abs_a_star = s.w.matmul(&d).matmul(&s.w.adjoint()).hermitian_part();
    (abs_a, abs_a_star)
}

/// Unitary polar factor `U` with `A = U·|A|`.
///
/// On the range of `|A|` the factor is unique. On `ker|A|` it maps a
/// Gram–Schmidt basis of `ker A` (built from the canonical basis in order) to
/// the Gram–Schmidt basis of `ker A*` built the same way, so the completion is
/// the identity whenever the two kernels coincide.
pub fn polar_unitary<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Matrix<T>> {
    a.validate_operator()?;
    let n = a.rows();
    let s = svd(a);
    let thr = tol.rank_rel * s.sigma_max();
    let r = s.rank_above(thr);
    let mut u = Matrix::zeros(n, n);
    for k in 0..r {
        let wk = s.w.column(k);
        let vk = s.v.column(k);
        u = &u + &Matrix::outer(&wk, &vk);
    }
    if r < n {
        let ker_a = canonical_frame(&s.v.select_columns(&(r..n).collect::<Vec<_>>()));
        let left = svd(&a.adjoint());
        let ker_as = canonical_frame(&left.v.select_columns(&(r..n).collect::<Vec<_>>()));
        u = &u + &ker_as.matmul(&ker_a.adjoint());
    }
    Ok(u)
}

pub(crate) fn polar_unitary_unchecked<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    let s = svd(a);
    s.w.matmul(&s.v.adjoint())
}

/// Orthonormal frame of the numerical kernel: right singular vectors whose
/// singular value is at most `threshold`.
pub fn kernel_abs<T: Real>(a: &Matrix<T>, threshold: T) -> Subspace<T> {
    let s = svd(a);
    let r = s.rank_above(threshold);
    let idx: Vec<usize> = (r..a.cols()).collect();
    Subspace::from_orthonormal(s.v.select_columns(&idx))
}

/// Kernel with the relative rank rule `σ ≤ rank_rel · σ_max`.
pub fn kernel<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Subspace<T> {
    let s = svd(a);
    let r = s.rank_above(tol.rank_rel * s.sigma_max());
    let idx: Vec<usize> = (r..a.cols()).collect();
    Subspace::from_orthonormal(s.v.select_columns(&idx))
}

/// Range of `A` with the relative rank rule.
pub fn image<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Subspace<T> {
    let s = svd(a);
    let r = s.rank_above(tol.rank_rel * s.sigma_max());
    let cols: Vec<Vector<T>> = (0..r).map(|k| s.w.column(k)).collect();
    Subspace::orthonormalize(a.rows(), &cols, T::lit(1e-8))
}

/// Numerical rank with the relative rule.
pub fn rank<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> usize {
    let s = svd(a);
    s.rank_above(tol.rank_rel * s.sigma_max())
}

/// `{x : A·x ∈ S}`.
pub fn preimage_in<T: Real>(a: &Matrix<T>, s: &Subspace<T>, tol: &ToleranceConfig<T>) -> Result<Subspace<T>> {
    if a.rows() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: s.ambient_dim(),
        });
    }
    let comp = s.complement_projector();
    let m = comp.matmul(a);
    // Scale by ‖A‖, not by the compressed matrix: a vanishing compression
    // means the whole space maps into S.
    let scale = svd(a).sigma_max();
    Ok(kernel_abs(&m, tol.rank_rel * scale))
}

/// Boolean structure flags of an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub normal: bool,
    pub unitary: bool,
    pub hermitian: bool,
    pub partial_isometry: bool,
}

pub fn classify<T: Real>(a: &Matrix<T>, tol: &ToleranceConfig<T>) -> Classification {
    let n = a.rows();
    let norm = a.norm();
    let ata = a.adjoint().matmul(a);
    let aat = a.matmul(&a.adjoint());
    let normal = ata.dist(&aat) <= tol.scaled(norm * norm);
    let unitary = ata.dist(&Matrix::identity(n)) <= tol.scaled(norm * norm);
    let hermitian = a.hermitian_residual() <= tol.scaled(norm);
    let partial_isometry = ata.matmul(&ata).dist(&ata) <= tol.scaled(norm * norm);
    Classification {
        normal,
        unitary,
        hermitian,
        partial_isometry,
    }
}

/// `‖A*A − AA*‖`.
pub fn normality_residual<T: Real>(a: &Matrix<T>) -> T {
    a.adjoint().matmul(a).dist(&a.matmul(&a.adjoint()))
}

/// Projects `v` onto the orthogonal complement of the orthonormal `frame`
/// columns (two passes of classical Gram–Schmidt).
pub(crate) fn project_out<T: Real>(frame: &[Vector<T>], v: &[C<T>]) -> Vector<T> {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for q in frame {
            let h = inner(&w, q);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi = *wi - h * qi;
            }
        }
    }
    w
}

pub(crate) fn unit<T: Real>(v: &[C<T>]) -> Vector<T> {
    let n = vnorm(v);
    if n == T::zero() {
        v.to_vec()
    } else {
        vscale(v, cr(T::one() / n))
    }
}

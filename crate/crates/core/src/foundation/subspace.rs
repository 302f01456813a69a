use super::decomp::{kernel_abs, project_out, svd};
use super::matrix::{basis, vnorm, vscale, Matrix, Vector};
use super::tolerance::ToleranceConfig;
use crate::error::{Error, Result};
use crate::scalar::{cr, Real};

/// Closed subspace of `Cⁿ` carried by an orthonormal column frame
/// (`ambient_dim × k`, `k = 0` for the zero subspace).
#[derive(Debug, Clone)]
pub struct Subspace<T> {
    ambient: usize,
    frame: Matrix<T>,
}

impl<T: Real> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            frame: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            frame: Matrix::identity(ambient),
        }
    }

    /// Wraps a frame that is already orthonormal.
    pub fn from_orthonormal(frame: Matrix<T>) -> Self {
        Self {
            ambient: frame.rows(),
            frame,
        }
    }

    /// Orthonormalizes `vectors` by modified Gram–Schmidt, dropping any whose
    /// residual norm falls below `drop_rel` times its original norm.
    pub fn orthonormalize(ambient: usize, vectors: &[Vector<T>], drop_rel: T) -> Self {
        let mut cols: Vec<Vector<T>> = Vec::new();
        for v in vectors {
            let n0 = vnorm(v);
            if n0 == T::zero() {
                continue;
            }
            let w = project_out(&cols, v);
            let n = vnorm(&w);
            if n > drop_rel * n0 {
                cols.push(vscale(&w, cr(T::one() / n)));
            }
        }
        Self {
            ambient,
            frame: Matrix::from_columns(ambient, &cols),
        }
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: &[Vector<T>], drop_rel: T) -> Self {
        Self::orthonormalize(ambient, vectors, drop_rel)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.frame.cols()
    }

    pub fn frame(&self) -> &Matrix<T> {
        &self.frame
    }

    pub fn into_frame(self) -> Matrix<T> {
        self.frame
    }

    /// `‖F*F − I‖`.
    pub fn orthonormality_residual(&self) -> T {
        self.frame.unitarity_residual()
    }

    /// Orthogonal projector `F·F*`.
    pub fn projector(&self) -> Matrix<T> {
        self.frame.matmul(&self.frame.adjoint())
    }

    /// `I − F·F*`.
    pub fn complement_projector(&self) -> Matrix<T> {
        &Matrix::identity(self.ambient) - &self.projector()
    }

    /// Sines of the principal angles between `self` and `other`, taken over
    /// the smaller of the two subspaces (ascending).
    pub fn principal_sines(&self, other: &Self) -> Vec<T> {
        let (small, big) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        if small.dim() == 0 {
            return Vec::new();
        }
        let residual = big.complement_projector().matmul(&small.frame);
        let mut s = svd(&residual).sigma;
        s.reverse();
        s
    }

    /// Equal dimensions and every principal angle sine at most `sin_tol`.
    pub fn same_as(&self, other: &Self, sin_tol: T) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.principal_sines(other).iter().all(|&s| s <= sin_tol)
    }

    /// Largest principal angle sine against a subspace of equal dimension;
    /// `1` when the dimensions differ.
    pub fn max_principal_sine(&self, other: &Self) -> T {
        if self.dim() != other.dim() {
            return T::one();
        }
        self.principal_sines(other).into_iter().fold(T::zero(), |a, b| a.max(b))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}

/// Orthogonal complement.
pub fn orthocomplement<T: Real>(s: &Subspace<T>) -> Subspace<T> {
    let n = s.ambient_dim();
    if s.dim() == 0 {
        return Subspace::full(n);
    }
    if s.dim() == n {
        return Subspace::zero(n);
    }
    kernel_abs(&s.frame().adjoint(), T::lit(0.5))
}

/// `S1 ∩ S2`: vectors of `S1` whose component off `S2` vanishes. Principal
/// angles with sine at most `residual_abs` count as intersecting.
pub fn subspace_intersect<T: Real>(
    s1: &Subspace<T>,
    s2: &Subspace<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Subspace<T>> {
    s1.check_ambient(s2)?;
    let n = s1.ambient_dim();
    if s1.dim() == 0 || s2.dim() == 0 {
        return Ok(Subspace::zero(n));
    }
    let off = s2.complement_projector().matmul(s1.frame());
    let coeffs = kernel_abs(&off, tol.residual_abs);
    let vecs = s1.frame().matmul(coeffs.frame());
    Ok(Subspace::orthonormalize(n, &vecs.columns(), T::lit(1e-6)))
}

/// Gram–Schmidt basis of the range of `frame` (orthonormal columns) built by
/// projecting `e₁, e₂, …` in order. Deterministic for a given subspace,
/// independent of which orthonormal frame represents it.
pub(crate) fn canonical_frame<T: Real>(frame: &Matrix<T>) -> Matrix<T> {
    let n = frame.rows();
    let k = frame.cols();
    if k == 0 {
        return Matrix::zeros(n, 0);
    }
    let p = frame.matmul(&frame.adjoint());
    let mut candidates: Vec<Vector<T>> = (0..n).map(|i| p.mul_vec(&basis(n, i))).collect();
    let mut cols: Vec<Vector<T>> = Vec::with_capacity(k);
    while cols.len() < k {
        // Take the first candidate that still has a substantial component.
        let mut best = None;
        for (i, c) in candidates.iter().enumerate() {
            let w = project_out(&cols, c);
            let nw = vnorm(&w);
            if nw > T::lit(1e-3) {
                best = Some((i, w, nw));
                break;
            }
        }
        let (i, w, nw) = match best {
            Some(b) => b,
            None => {
                // Fall back to the largest remaining component.
                let (i, w) = candidates
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i, project_out(&cols, c)))
                    .max_by(|a, b| vnorm(&a.1).partial_cmp(&vnorm(&b.1)).unwrap())
                    .expect("non-empty");
                let nw = vnorm(&w);
                (i, w, nw)
            }
        };
        cols.push(vscale(&w, cr(T::one() / nw)));
        candidates[i] = vec![cr(T::zero()); n];
    }
    Matrix::from_columns(n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::matrix::real_vector;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn e(n: usize, i: usize) -> Vector<f64> {
        basis(n, i)
    }

    #[test]
    fn intersect_coordinate_planes() {
        let s1 = Subspace::span(3, &[e(3, 0), e(3, 1)], 1e-12);
        let s2 = Subspace::span(3, &[e(3, 1), e(3, 2)], 1e-12);
        let i = subspace_intersect(&s1, &s2, &tol()).unwrap();
        assert!(i.same_as(&Subspace::span(3, &[e(3, 1)], 1e-12), 1e-12));
        let full = Subspace::full(3);
        assert!(subspace_intersect(&full, &s1, &tol()).unwrap().same_as(&s1, 1e-12));
    }

    #[test]
    fn intersect_rejects_mismatch() {
        let s1 = Subspace::<f64>::full(3);
        let s2 = Subspace::<f64>::full(2);
        assert!(matches!(
            subspace_intersect(&s1, &s2, &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn complement_of_line() {
        let s = Subspace::span(3, &[e(3, 0)], 1e-12);
        let c = orthocomplement(&s);
        assert!(c.same_as(&Subspace::span(3, &[e(3, 1), e(3, 2)], 1e-12), 1e-12));
        assert_eq!(orthocomplement(&Subspace::<f64>::zero(3)).dim(), 3);
        assert_eq!(orthocomplement(&Subspace::<f64>::full(3)).dim(), 0);
    }

    #[test]
    fn canonical_frame_is_frame_independent() {
        let a = Subspace::span(
            3,
            &[real_vector(&[1.0, 1.0, 0.0]), real_vector(&[0.0, 1.0, 1.0])],
            1e-12,
        );
        let b = Subspace::span(
            3,
            &[real_vector(&[1.0, 2.0, 1.0]), real_vector(&[1.0, 0.0, -1.0])],
            1e-12,
        );
        assert!(a.same_as(&b, 1e-12));
        let fa = canonical_frame(a.frame());
        let fb = canonical_frame(b.frame());
        assert!(fa.dist(&fb) < 1e-12);
    }
}

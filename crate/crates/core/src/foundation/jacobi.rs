//! Jacobi kernels: cyclic two-sided rotations for Hermitian eigenproblems and
//! one-sided (Hestenes) rotations for the SVD. Both converge quadratically and
//! are accurate to working precision for the matrix sizes this crate targets.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::scalar::{cr, Real, C};

const MAX_SWEEPS: usize = 100;

/// Unit-modulus phase of `z`; `1` when `z` is zero.
fn phase<T: Real>(z: C<T>) -> C<T> {
    let r = z.norm();
    if r > T::zero() {
        z / r
    } else {
        C::one()
    }
}

/// Rotation parameters `(c, s)` with `t = s/c` the smaller root of
/// `t² + 2ζt − 1 = 0`.
fn rotation<T: Real>(zeta: T) -> (T, T) {
    let t = if zeta >= T::zero() {
        T::one() / (zeta + (T::one() + zeta * zeta).sqrt())
    } else {
        -T::one() / (-zeta + (T::one() + zeta * zeta).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, c * t)
}

/// Diagonalizes a Hermitian matrix. Returns unsorted real eigenvalues and the
/// unitary whose columns are the matching eigenvectors.
pub(crate) fn hermitian_jacobi<T: Real>(a: &Matrix<T>) -> (Vec<T>, Matrix<T>) {
    let n = a.rows();
    let mut a = a.hermitian_part();
    let mut v = Matrix::identity(n);
    let scale = a.norm();
    if scale == T::zero() || n == 1 {
        return ((0..n).map(|i| a[(i, i)].re).collect(), v);
    }
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= eps * scale * T::lit(1e-2) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= eps * T::lit(1e-3) * scale {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let (c, s) = rotation((aqq - app) / (r + r));
                // Column transform W = diag(1, conj(e^{iφ})) · [[c, s], [−s, c]].
                let e = phase(apq).conj();
                let w_pp = cr(c);
                let w_pq = cr(s);
                let w_qp = e * (-s);
                let w_qq = e * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * w_pp + akq * w_qp;
                    a[(k, q)] = akp * w_pq + akq * w_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * w_pp + vkq * w_qp;
                    v[(k, q)] = vkp * w_pq + vkq * w_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
                    a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
                }
                a[(p, q)] = C::zero();
                a[(q, p)] = C::zero();
                a[(p, p)] = cr(a[(p, p)].re);
                a[(q, q)] = cr(a[(q, q)].re);
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Thin singular value decomposition `A = W·diag(σ)·V*` of an `m×n` matrix.
///
/// `sigma` is sorted descending and has length `n`; `v` is `n×n` unitary.
/// Columns of `w` for zero singular values are left as zero vectors.
pub(crate) struct Svd<T> {
    pub w: Matrix<T>,
    pub sigma: Vec<T>,
    pub v: Matrix<T>,
}

pub(crate) fn svd_jacobi<T: Real>(a: &Matrix<T>) -> Svd<T> {
    let m = a.rows();
    let n = a.cols();
    let mut cols: Vec<Vec<C<T>>> = a.columns();
    let mut v: Vec<Vec<C<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![C::zero(); n];
            e[j] = C::one();
            e
        })
        .collect();
    let eps = T::epsilon();
    // Couplings below this are noise between (near-)zero columns.
    let floor = eps * eps * a.norm() * a.norm();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma: C<T> = C::zero();
                for (&x, &y) in cols[p].iter().zip(&cols[q]) {
                    alpha = alpha + x.norm_sqr();
                    beta = beta + y.norm_sqr();
                    gamma = gamma + x.conj() * y;
                }
                let g = gamma.norm();
                if g <= floor || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s) = rotation((beta - alpha) / (g + g));
                let e: C<T> = phase(gamma);
                // a_p ← c·a_p − s·conj(e)·a_q ; a_q ← s·e·a_p + c·a_q
                for w in [&mut cols, &mut v] {
                    let (head, tail) = w.split_at_mut(q);
                    for (xp, xq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                        let (ap, aq) = (*xp, *xq);
                        *xp = ap * c - e.conj() * aq * s;
                        *xq = e * ap * s + aq * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<T> = cols.iter().map(|c| super::matrix::vnorm(c)).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let mut w = Matrix::zeros(m, n);
    let mut vm = Matrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (jj, &j) in order.iter().enumerate() {
        let s = norms[j];
        sigma.push(s);
        if s > T::zero() {
            let col: Vec<_> = cols[j].iter().map(|z| z / s).collect();
            w.set_column(jj, &col);
        }
        vm.set_column(jj, &v[j]);
    }
    Svd { w, sigma, v: vm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn sample() -> Matrix<f64> {
        Matrix::from_complex_rows(&[
            &[(1.0, 0.5), (0.0, -2.0), (3.0, 0.0)],
            &[(0.2, 0.0), (1.0, 1.0), (-1.0, 0.3)],
            &[(0.0, 0.0), (2.0, -0.7), (0.5, 0.5)],
            &[(1.5, 0.0), (0.0, 0.0), (0.0, 1.0)],
        ])
    }

    #[test]
    fn hermitian_jacobi_reconstructs() {
        let a = sample();
        let h = a.adjoint().matmul(&a);
        let (vals, v) = hermitian_jacobi(&h);
        assert!(v.unitarity_residual() < 1e-13);
        let d = Matrix::diag_real(&vals);
        let rec = v.matmul(&d).matmul(&v.adjoint());
        assert!(rec.dist(&h) < 1e-12 * h.norm());
    }

    #[test]
    fn svd_reconstructs_tall_and_wide() {
        for a in [sample(), sample().adjoint()] {
            let svd = svd_jacobi(&a);
            let k = a.cols();
            let sig: Vec<C<f64>> = svd.sigma.iter().map(|&s| c(s, 0.0)).collect();
            let mut s = Matrix::zeros(k, k);
            for i in 0..k {
                s[(i, i)] = sig[i];
            }
            let rec = svd.w.matmul(&s).matmul(&svd.v.adjoint());
            assert!(rec.dist(&a) < 1e-12, "{}", rec.dist(&a));
            assert!(svd.v.unitarity_residual() < 1e-13);
            assert!(svd.sigma.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn svd_of_wide_frame_keeps_v_unitary() {
        // Rows of a partial unitary: four exactly-zero singular values.
        let u: Matrix<f64> = crate::random::unitary(&mut crate::random::rng(40), 6);
        let rows = u.select_columns(&[0, 1]).adjoint();
        let svd = svd_jacobi(&rows);
        assert!(svd.v.unitarity_residual() < 1e-14, "{:e}", svd.v.unitarity_residual());
    }
}

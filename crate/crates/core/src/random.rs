//! Seeded generators for matrices, conjugations and hypothesis-satisfying
//! perturbation data. Every generator takes an explicit RNG; use [`rng`] for a
//! reproducible ChaCha stream.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::conjugation::Conjugation;
use crate::foundation::{polar_unitary_unchecked, Matrix, ToleranceConfig, Vector};
use crate::perturbation::PerturbationSpec;
use crate::scalar::{c, cr, Real, C};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss<T: Real, R: Rng + ?Sized>(r: &mut R) -> T {
    let g: f64 = StandardNormal.sample(r);
    T::lit(g)
}

pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(r: &mut R) -> C<T> {
    c(gauss(r), gauss(r))
}

pub fn vector<T: Real, R: Rng + ?Sized>(r: &mut R, n: usize) -> Vector<T> {
    (0..n).map(|_| complex_gaussian(r)).collect()
}

/// Ginibre matrix (i.i.d. standard complex Gaussian entries).
pub fn matrix<T: Real, R: Rng + ?Sized>(r: &mut R, n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |_, _| complex_gaussian(r))
}

/// Haar-like unitary: polar factor of a Ginibre matrix.
pub fn unitary<T: Real, R: Rng + ?Sized>(r: &mut R, n: usize) -> Matrix<T> {
    polar_unitary_unchecked(&matrix(r, n))
}

pub fn hermitian<T: Real, R: Rng + ?Sized>(r: &mut R, n: usize) -> Matrix<T> {
    matrix(r, n).hermitian_part()
}

/// `W·D·W*` with random complex diagonal `D`.
pub fn normal<T: Real, R: Rng + ?Sized>(r: &mut R, n: usize) -> Matrix<T> {
    let d: Vec<C<T>> = (0..n).map(|_| complex_gaussian(r)).collect();
    conjugate_diag(&unitary(r, n), &d)
}

fn conjugate_diag<T: Real>(w: &Matrix<T>, d: &[C<T>]) -> Matrix<T> {
    w.matmul(&Matrix::diag(d)).matmul(&w.adjoint())
}

/// `u = W·Wᵀ` for a random unitary `W`.
pub fn conjugation<T: Real, R: Rng + ?Sized>(r: &mut R, n: usize) -> Conjugation<T> {
    let w = unitary(r, n);
    Conjugation::from_u_unchecked(w.matmul(&w.transpose()))
}

/// `A = (M + C·M*·C)/2`, which is `C`-symmetric.
pub fn c_symmetric<T: Real, R: Rng + ?Sized>(r: &mut R, n: usize) -> (Matrix<T>, Conjugation<T>) {
    let cj = conjugation(r, n);
    let m = matrix(r, n);
    let a = (&m + &cj.sandwich(&m.adjoint())).scale_real(T::lit(0.5));
    (a, cj)
}

fn unit_phase<T: Real, R: Rng + ?Sized>(r: &mut R) -> C<T> {
    let t: f64 = r.random_range(0.0..std::f64::consts::TAU);
    c(T::lit(t.cos()), T::lit(t.sin()))
}

/// Shape of a random normal matrix with repeated moduli.
#[derive(Debug, Clone, Copy)]
pub struct NormalShape {
    pub dim: usize,
    /// Include a zero eigenvalue block.
    pub singular: bool,
}

/// Perturbation data satisfying both hypotheses.
///
/// `N = W·D·W*` where `D` groups eigenvalues into a few distinct values
/// (several sharing a modulus, optionally a zero block). With `C₀` the
/// standard conjugation in the `W`-basis and `V` a random unitary commuting
/// with `N` (block unitary over equal eigenvalues), `y = e^{iφ}·V·C₀x`
/// satisfies `‖Eₛy‖ = ‖Eₛx‖` and `⟨N·Eₛy, y⟩ = ⟨N·Eₛx, x⟩` on every atom.
pub fn hypothesis_instance<T: Real, R: Rng + ?Sized>(
    r: &mut R,
    shape: NormalShape,
    lambda_max: f64,
    tol: &ToleranceConfig<T>,
) -> PerturbationSpec<T> {
    let n = shape.dim;
    let sizes = group_sizes(r, n);
    let mut values: Vec<C<T>> = Vec::with_capacity(sizes.len());
    for g in 0..sizes.len() {
        let v = if shape.singular && g == 0 {
            cr(T::zero())
        } else if g > 0 && r.random_bool(0.4) {
            // Reuse a previous modulus with a new phase.
            let prev = values[r.random_range(0..g)];
            if prev.norm() == T::zero() {
                complex_gaussian(r)
            } else {
                prev * unit_phase(r)
            }
        } else {
            complex_gaussian(r)
        };
        values.push(v);
    }
    let (nm, x, y) = matched_pair(r, &sizes, &values);
    let mag: f64 = r.random_range(0.0..=lambda_max);
    let lambda = unit_phase::<T, R>(r) * T::lit(mag);
    PerturbationSpec::new(nm, x, y, lambda, tol).expect("generated N is normal")
}

fn group_sizes<R: Rng + ?Sized>(r: &mut R, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = r.random_range(1..=left.min(3));
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// `N = W·D·W*` with `D` constant on each group, a random `x`, and
/// `y = e^{iφ}·V·C₀x` (see [`hypothesis_instance`]).
fn matched_pair<T: Real, R: Rng + ?Sized>(
    r: &mut R,
    sizes: &[usize],
    values: &[C<T>],
) -> (Matrix<T>, Vector<T>, Vector<T>) {
    let n: usize = sizes.iter().sum();
    let mut d = Vec::with_capacity(n);
    let mut v_block = Matrix::zeros(n, n);
    let mut off = 0;
    for (g, &s) in sizes.iter().enumerate() {
        d.extend(std::iter::repeat_n(values[g], s));
        v_block.set_block(off, off, &unitary::<T, R>(r, s));
        off += s;
    }
    let w = unitary(r, n);
    let nm = conjugate_diag(&w, &d);
    let x = vector(r, n);
    let c0 = w.matmul(&w.transpose());
    let v = w.matmul(&v_block).matmul(&w.adjoint());
    let phase = unit_phase(r);
    let c0x = c0.mul_vec(&crate::foundation::vconj(&x));
    let y: Vector<T> = v.mul_vec(&c0x).into_iter().map(|z| z * phase).collect();
    (nm, x, y)
}

/// Unitary `U` with vectors `x`, `y` such that `‖x‖ = ‖y‖` and
/// `⟨Ux,x⟩ = ⟨Uy,y⟩`.
pub fn unitary_triple<T: Real, R: Rng + ?Sized>(r: &mut R, dim: usize) -> (Matrix<T>, Vector<T>, Vector<T>) {
    let sizes = group_sizes(r, dim);
    let values: Vec<C<T>> = (0..sizes.len()).map(|_| unit_phase(r)).collect();
    matched_pair(r, &sizes, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturbation::check_hypotheses;

    #[test]
    fn generators_are_reproducible() {
        let a: Matrix<f64> = matrix(&mut rng(7), 4);
        let b: Matrix<f64> = matrix(&mut rng(7), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn synthesized_objects_are_valid() {
        let mut r = rng(1);
        for n in 1..6 {
            let u: Matrix<f64> = unitary(&mut r, n);
            assert!(u.unitarity_residual() < 1e-12);
            let cj: Conjugation<f64> = conjugation(&mut r, n);
            assert!(cj.residuals().max() < 1e-12);
            let (a, cj) = c_symmetric::<f64, _>(&mut r, n);
            assert!(crate::conjugation::is_c_symmetric(&a, &cj).unwrap() < 1e-12);
        }
    }

    #[test]
    fn instances_satisfy_hypotheses() {
        let tol = ToleranceConfig::<f64>::default();
        let mut r = rng(3);
        for dim in 2..7 {
            for singular in [false, true] {
                let spec = hypothesis_instance(&mut r, NormalShape { dim, singular }, 10.0, &tol);
                let rep = check_hypotheses(&spec, &tol).unwrap();
                assert!(rep.pass, "{}", rep.summary());
            }
        }
    }
}

//! The worked examples as exact matrices: each is `A = N + λ·y⊗x` with `N`
//! normal.

use crate::error::Result;
use crate::foundation::{basis, real_vector, Matrix, ToleranceConfig, Vector};
use crate::perturbation::PerturbationSpec;
use crate::scalar::{c, Real, C};

#[derive(Debug, Clone)]
pub struct WorkedExample<T> {
    pub name: &'static str,
    pub provenance: &'static str,
    pub a: Matrix<T>,
    pub n: Matrix<T>,
    pub x: Vector<T>,
    pub y: Vector<T>,
    pub lambda: C<T>,
}

impl<T: Real> WorkedExample<T> {
    pub fn spec(&self, tol: &ToleranceConfig<T>) -> Result<PerturbationSpec<T>> {
        PerturbationSpec::new(self.n.clone(), self.x.clone(), self.y.clone(), self.lambda, tol)
    }
}

fn sqrt2<T: Real>() -> T {
    T::lit(2.0).sqrt()
}

/// 4×4 operator in GS that is not complex symmetric: `U + √2·y⊗x` with `U`
/// a permutation unitary, `x = e₁`, `y = (e₁ − e₂)/√2`.
pub fn example1<T: Real>() -> WorkedExample<T> {
    let s = 1.0 / 2f64.sqrt();
    WorkedExample {
        name: "example1",
        provenance: "Example 1: A = U + sqrt(2) y(x) x, U permutation unitary, x = e1, y = (e1 - e2)/sqrt(2)",
        a: Matrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 1.0],
            &[-1.0, 0.0, 1.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]),
        n: Matrix::from_real_rows(&[
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]),
        x: basis(4, 0),
        y: real_vector(&[s, -s, 0.0, 0.0]),
        lambda: c(sqrt2(), T::zero()),
    }
}

/// 3×3 operator outside GS; the second hypothesis fails at `s = 1`.
pub fn example2<T: Real>() -> WorkedExample<T> {
    let s = 1.0 / 2f64.sqrt();
    WorkedExample {
        name: "example2",
        provenance: "Example 2: A = N + sqrt(2) y(x) x, N = diag(1,-1,0), x = e3, y = (e1 + e2)/sqrt(2)",
        a: Matrix::from_real_rows(&[&[1.0, 0.0, 1.0], &[0.0, -1.0, 1.0], &[0.0, 0.0, 0.0]]),
        n: Matrix::diag_real(&[T::one(), -T::one(), T::zero()]),
        x: basis(3, 2),
        y: real_vector(&[s, s, 0.0]),
        lambda: c(sqrt2(), T::zero()),
    }
}

/// 3×3 operator outside GS with unitary `N`; the first hypothesis fails.
pub fn example3<T: Real>() -> WorkedExample<T> {
    let s = 1.0 / 2f64.sqrt();
    WorkedExample {
        name: "example3",
        provenance: "Example 3: A = U + sqrt(2) y(x) x, U = diag(i,-1,1), x = e3, y = (e1 + e2)/sqrt(2)",
        a: Matrix::from_complex_rows(&[
            &[(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)],
            &[(0.0, 0.0), (-1.0, 0.0), (1.0, 0.0)],
            &[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
        ]),
        n: Matrix::diag(&[c(T::zero(), T::one()), c(-T::one(), T::zero()), c(T::one(), T::zero())]),
        x: basis(3, 2),
        y: real_vector(&[s, s, 0.0]),
        lambda: c(sqrt2(), T::zero()),
    }
}

/// `[[R, I], [I, 0]]` on `C² ⊕ C²` with `R = e₁⊗e₁`.
pub fn unitary_block<T: Real>() -> WorkedExample<T> {
    let a = Matrix::from_real_rows(&[
        &[1.0, 0.0, 1.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
    ]);
    let n = Matrix::from_real_rows(&[
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
    ]);
    WorkedExample {
        name: "unitary-block",
        provenance: "Block corollary: [[R, V], [U, 0]] with U = V = I on C^2, R = e1 (x) e1",
        a,
        n,
        x: basis(4, 0),
        y: basis(4, 0),
        lambda: c(T::one(), T::zero()),
    }
}

pub fn by_name<T: Real>(name: &str) -> Option<WorkedExample<T>> {
    match name {
        "example1" => Some(example1()),
        "example2" => Some(example2()),
        "example3" => Some(example3()),
        "unitary-block" => Some(unitary_block()),
        _ => None,
    }
}

pub const NAMES: [&str; 4] = ["example1", "example2", "example3", "unitary-block"];

use std::fmt;

use crate::error::Result;
use crate::foundation::{inner, vnorm, Matrix, Vector};
use crate::scalar::{cr, Real, C};

/// A word in `S` and `S*`; `true` marks `S*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<bool>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(s: &str) -> Option<Self> {
        s.split_whitespace()
            .map(|t| match t {
                "S" => Some(false),
                "S*" => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|&s| if s { "S*" } else { "S" }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `S = e^{−iπ/4}·(A*A + i·AA*)/‖A*A + i·AA*‖`. Any conjugation with
/// `C·A*A·C = AA*` commutes with `S`.
pub(crate) fn normalized_s<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    let ata = a.adjoint().matmul(a);
    let aat = a.matmul(&a.adjoint());
    let i = C::new(T::zero(), T::one());
    let s = &ata + &aat.scale(i);
    let norm = s.norm();
    if norm == T::zero() {
        return s;
    }
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    s.scale(C::new(h, -h) / cr(norm))
}

pub(crate) fn word_trace<T: Real>(s: &Matrix<T>, s_star: &Matrix<T>, w: &Word) -> C<T> {
    let mut m = Matrix::identity(s.rows());
    for &star in &w.0 {
        m = m.matmul(if star { s_star } else { s });
    }
    m.trace()
}

/// Why no conjugation `C` can satisfy `C·A*A·C = AA*`.
///
/// `f` are unit eigenvectors of `A*A`, `g` of `AA*` for the same simple
/// eigenvalues; any such `C` maps `fᵢ` to a unimodular multiple `αᵢ·gᵢ` and
/// is symmetric only if `αᵢ⟨fᵢ,gⱼ⟩ = αⱼ⟨fⱼ,gᵢ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub enum ObstructionCertificate<T> {
    /// `|⟨f₁,g₂⟩| ≠ |⟨f₂,g₁⟩|`; stored with `m₁ ≥ m₂`.
    Modulus {
        eigenvalues: (T, T),
        f: (Vector<T>, Vector<T>),
        g: (Vector<T>, Vector<T>),
        moduli: (T, T),
    },
    /// Around the closed cycle `0 → 1 → … → k−1 → 0` of the stored vectors,
    /// `∏ ⟨f_a,g_b⟩/⟨f_b,g_a⟩ ≠ 1`.
    PhaseCycle {
        /// Indices of the eigenpairs on `M(A)`, ascending eigenvalue order.
        indices: Vec<usize>,
        eigenvalues: Vec<T>,
        f: Vec<Vector<T>>,
        g: Vec<Vector<T>>,
        product: C<T>,
    },
    /// `Im tr(w(S, S*)) ≠ 0`, impossible for an `S` with a real matrix.
    WordTrace { word: Word, trace: C<T> },
}

/// Ratio product around a closed cycle of eigenvector pairs.
pub(crate) fn cycle_product<T: Real>(f: &[Vector<T>], g: &[Vector<T>]) -> C<T> {
    let k = f.len();
    let mut p = cr(T::one());
    for a in 0..k {
        let b = (a + 1) % k;
        p = p * inner(&f[a], &g[b]) / inner(&f[b], &g[a]);
    }
    p
}

impl<T: Real> ObstructionCertificate<T> {
    /// Recomputes the stored quantities from `A` and returns the largest
    /// deviation: eigen-equation residuals of the stored vectors together
    /// with the differences of moduli, cycle product or trace.
    pub fn recheck(&self, a: &Matrix<T>) -> Result<T> {
        a.validate_operator()?;
        let ata = a.adjoint().matmul(a);
        let aat = a.matmul(&a.adjoint());
        let eig_res = |m: &Matrix<T>, lam: T, v: &Vector<T>| -> T {
            let mv = m.mul_vec(v);
            let r: Vec<C<T>> = mv.iter().zip(v).map(|(x, y)| x - y * lam).collect();
            vnorm(&r) + (vnorm(v) - T::one()).abs()
        };
        Ok(match self {
            ObstructionCertificate::Modulus {
                eigenvalues,
                f,
                g,
                moduli,
            } => {
                let res = eig_res(&ata, eigenvalues.0, &f.0)
                    .max(eig_res(&ata, eigenvalues.1, &f.1))
                    .max(eig_res(&aat, eigenvalues.0, &g.0))
                    .max(eig_res(&aat, eigenvalues.1, &g.1));
                let m1 = inner(&f.0, &g.1).norm();
                let m2 = inner(&f.1, &g.0).norm();
                res.max((m1 - moduli.0).abs()).max((m2 - moduli.1).abs())
            }
            ObstructionCertificate::PhaseCycle {
                eigenvalues,
                f,
                g,
                product,
                ..
            } => {
                let mut res = T::zero();
                for ((lam, fv), gv) in eigenvalues.iter().zip(f).zip(g) {
                    res = res.max(eig_res(&ata, *lam, fv)).max(eig_res(&aat, *lam, gv));
                }
                res.max((cycle_product(f, g) - product).norm())
            }
            ObstructionCertificate::WordTrace { word, trace } => {
                let s = normalized_s(a);
                (word_trace(&s, &s.adjoint(), word) - trace).norm()
            }
        })
    }

    /// Size of the violation: `m₁ − m₂`, `|product − 1|` or `|Im tr|`.
    pub fn gap(&self) -> T {
        match self {
            ObstructionCertificate::Modulus { moduli, .. } => moduli.0 - moduli.1,
            ObstructionCertificate::PhaseCycle { product, .. } => (product - cr(T::one())).norm(),
            ObstructionCertificate::WordTrace { trace, .. } => trace.im.abs(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ObstructionCertificate::Modulus { .. } => "modulus",
            ObstructionCertificate::PhaseCycle { .. } => "phase-cycle",
            ObstructionCertificate::WordTrace { .. } => "word-trace",
        }
    }
}

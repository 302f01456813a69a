//! Spectral measure of `|N|` for a normal matrix `N`, realized by its finitely
//! many atoms, plus the polar data of `N` on each atom.

use crate::error::{Error, Result};
use crate::foundation::{cluster_sorted, normality_residual, svd, Matrix, ToleranceConfig};
use crate::scalar::{cr, Real};

/// One atom of `E_{|N|}`: a singular value and an orthonormal frame of the
/// corresponding eigenspace of `|N|`.
#[derive(Debug, Clone)]
pub struct Atom<T> {
    pub s: T,
    pub frame: Matrix<T>,
}

#[derive(Debug, Clone)]
pub struct SpectralMeasureAbs<T> {
    n: Matrix<T>,
    atoms: Vec<Atom<T>>,
    tol: ToleranceConfig<T>,
}

/// Borel subsets of `ℝ⁺`, restricted to what finite spectra can see.
#[derive(Debug, Clone, PartialEq)]
pub enum BorelSet<T> {
    Empty,
    All,
    /// Indices into [`SpectralMeasureAbs::atoms`].
    Atoms(Vec<usize>),
    /// Union of closed intervals `[lo, hi]`.
    Intervals(Vec<(T, T)>),
}

impl<T: Real> BorelSet<T> {
    pub fn singleton(s: T) -> Self {
        BorelSet::Intervals(vec![(s, s)])
    }

    fn validate(&self, atoms: usize) -> Result<()> {
        match self {
            BorelSet::Atoms(idx) => {
                if let Some(&bad) = idx.iter().find(|&&i| i >= atoms) {
                    return Err(Error::InvalidBorelSet(format!(
                        "atom index {bad} out of range ({atoms} atoms)"
                    )));
                }
            }
            BorelSet::Intervals(iv) => {
                for &(lo, hi) in iv {
                    if lo.is_nan() || hi.is_nan() || lo > hi {
                        return Err(Error::InvalidBorelSet(format!(
                            "interval [{lo}, {hi}] has lower > upper"
                        )));
                    }
                }
            }
            BorelSet::Empty | BorelSet::All => {}
        }
        Ok(())
    }

    fn contains_atom(&self, index: usize, s: T, slack: T) -> bool {
        match self {
            BorelSet::Empty => false,
            BorelSet::All => true,
            BorelSet::Atoms(idx) => idx.contains(&index),
            BorelSet::Intervals(iv) => iv.iter().any(|&(lo, hi)| s >= lo - slack && s <= hi + slack),
        }
    }
}

impl<T: Real> SpectralMeasureAbs<T> {
    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.n
    }

    pub fn tolerance(&self) -> &ToleranceConfig<T> {
        &self.tol
    }

    pub fn dim(&self) -> usize {
        self.n.rows()
    }

    /// Index of the atom at `s` (within the clustering threshold).
    pub fn atom_at(&self, s: T) -> Option<usize> {
        let thr = cluster_threshold(&self.n, &self.tol);
        self.atoms.iter().position(|a| (a.s - s).abs() <= thr)
    }

    /// Concatenated atom frames, a unitary matrix.
    pub fn joint_frame(&self) -> Matrix<T> {
        let mut cols = Vec::with_capacity(self.dim());
        for a in &self.atoms {
            cols.extend(a.frame.columns());
        }
        Matrix::from_columns(self.dim(), &cols)
    }
}

fn cluster_threshold<T: Real>(n: &Matrix<T>, tol: &ToleranceConfig<T>) -> T {
    tol.eig_cluster_rel * n.norm().max(T::one())
}

/// Atoms of `E_{|N|}`. Singular values and eigenframes of `|N|` are read off
/// one SVD of `N`; values at most `rank_rel · σ_max` are snapped to zero and
/// the rest are chain-clustered, each cluster represented by its mean.
pub fn spectral_measure_abs<T: Real>(n: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<SpectralMeasureAbs<T>> {
    n.validate_operator()?;
    let norm = n.norm();
    let res = normality_residual(n);
    if res > tol.scaled(norm * norm) {
        return Err(Error::NotNormal {
            residual: res.to_f64_lossy(),
        });
    }
    let d = n.rows();
    let s = svd(n);
    let zero_thr = tol.rank_rel * s.sigma_max();
    // Ascending order for clustering.
    let mut order: Vec<usize> = (0..d).collect();
    order.reverse();
    let values: Vec<T> = order
        .iter()
        .map(|&k| if s.sigma[k] <= zero_thr { T::zero() } else { s.sigma[k] })
        .collect();
    let thr = cluster_threshold(n, tol);
    let mut atoms = Vec::new();
    for range in cluster_sorted(&values, thr) {
        let idx: Vec<usize> = range.clone().map(|i| order[i]).collect();
        let mean = values[range.clone()].iter().fold(T::zero(), |acc, &v| acc + v) / T::lit(range.len() as f64);
        let sval = if values[range.start] == T::zero() {
            T::zero()
        } else {
            mean
        };
        atoms.push(Atom {
            s: sval,
            frame: s.v.select_columns(&idx),
        });
    }
    Ok(SpectralMeasureAbs {
        n: n.clone(),
        atoms,
        tol: *tol,
    })
}

/// `E_{|N|}(Δ)`: sum of the atom projectors with `s ∈ Δ` (interval membership
/// has absolute slack `residual_abs`).
pub fn evaluate<T: Real>(e: &SpectralMeasureAbs<T>, delta: &BorelSet<T>) -> Result<Matrix<T>> {
    delta.validate(e.atoms.len())?;
    let d = e.dim();
    let mut p = Matrix::zeros(d, d);
    for (i, a) in e.atoms.iter().enumerate() {
        if delta.contains_atom(i, a.s, e.tol.residual_abs) {
            p = &p + &a.frame.matmul(&a.frame.adjoint());
        }
    }
    Ok(p)
}

/// `(s, U_block)` with `F*·N·F = s·U_block` in the atom's frame coordinates.
/// The zero atom gets the identity.
pub fn block_polar<T: Real>(e: &SpectralMeasureAbs<T>, atom_index: usize) -> Result<(T, Matrix<T>)> {
    let a = e.atoms.get(atom_index).ok_or_else(|| {
        Error::InvalidBorelSet(format!(
            "atom index {atom_index} out of range ({} atoms)",
            e.atoms.len()
        ))
    })?;
    let k = a.frame.cols();
    if a.s == T::zero() {
        return Ok((a.s, Matrix::identity(k)));
    }
    let block = a
        .frame
        .adjoint()
        .matmul(&e.n)
        .matmul(&a.frame)
        .scale(cr(T::one() / a.s));
    // The compression is unitary up to clustering noise; take its polar factor.
    let s = svd(&block);
    Ok((a.s, s.w.matmul(&s.v.adjoint())))
}

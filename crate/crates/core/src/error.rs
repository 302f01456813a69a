use thiserror::Error;

use crate::perturbation::HypothesisReport;

/// Errors raised by the toolkit. Residuals are reported as `f64` regardless
/// of the working precision.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimension must be at least 1")]
    Empty,
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid tolerance `{name}` = {value}: must lie in (0, 1)")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is not normal (residual {residual:.3e})")]
    NotNormal { residual: f64 },
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("matrix is not symmetric unitary: involution residual {residual:.3e}")]
    NotInvolutive { residual: f64 },
    #[error("Gram condition <x,b> = <a,y> violated (gap {gap:.3e})")]
    GramMismatch { gap: f64 },
    #[error("norm mismatch: {left:.6e} vs {right:.6e}")]
    NormMismatch { left: f64, right: f64 },
    #[error("vectors are not orthogonal (overlap {overlap:.3e})")]
    NotOrthogonal { overlap: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("compression to M(A) leaks: off-block residual {residual:.3e}")]
    ReductionResidual { residual: f64 },
    #[error("spectra of |A| and |A*| on M(A) disagree (gap {gap:.3e}): numerical breakdown")]
    SpectrumMismatch { gap: f64 },
    #[error("perturbation hypotheses failed: {}", .0.summary())]
    HypothesesFailed(Box<HypothesisReport>),
    #[error("operator is not rank one (numerical rank {rank})")]
    NotRankOne { rank: usize },
    #[error("operators do not commute (residual {residual:.3e})")]
    NotCommuting { residual: f64 },
    #[error("operator is not a partial isometry (residual {residual:.3e})")]
    NotPartialIsometry { residual: f64 },
    #[error("vector is not in ker(V)^perp (component {residual:.3e})")]
    NotInCokernel { residual: f64 },
    #[error("invalid Borel set: {0}")]
    InvalidBorelSet(String),
    #[error("assembled witness fails verification (residual {residual:.3e})")]
    WitnessResidual { residual: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

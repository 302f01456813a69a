//! Conjugations, `C`-normal matrices and rank-one perturbations of normal
//! matrices.
//!
//! All numerics are generic over the real scalar `T` ([`Real`], implemented
//! for `f32` and `f64`); the aliases below fix `f64` (and `f32` with a `32`
//! suffix).

pub mod cnormal;
pub mod conjugation;
mod error;
pub mod fixtures;
pub mod foundation;
pub mod perturbation;
pub mod random;
mod scalar;
pub mod spectral;

pub use cnormal::{
    cs_trace_test, decide_gs, decide_gs_with, gs_separation_probe, m_space, m_space_fixpoint, reduce_to_mspace,
    CsVerdict, DecideOptions, ObstructionCertificate, Tier, VerdictKind,
};
pub use conjugation::{
    conj_angl, conjugation_from_basis_map, conjugation_mapping_pairs, fixed_real_basis, is_c_normal, is_c_symmetric,
    standard_conjugation, verify_conjugation, Conjugation,
};
pub use error::{Error, Result};
pub use foundation::{Matrix, Subspace, ToleranceConfig, Vector};
pub use perturbation::{build_witness, check_hypotheses, rank_one, HypothesisReport, PerturbationSpec};
pub use scalar::{Real, C};
pub use spectral::{block_polar, evaluate, spectral_measure_abs, BorelSet, SpectralMeasureAbs};

pub type Complex64 = C<f64>;
pub type ComplexMatrix = Matrix<f64>;
pub type ComplexVector = Vector<f64>;
pub type Conjugation64 = Conjugation<f64>;
pub type Tolerances = ToleranceConfig<f64>;
pub type GsVerdict64 = cnormal::GsVerdict<f64>;
pub type PerturbationSpec64 = PerturbationSpec<f64>;

pub type Complex32 = C<f32>;
pub type ComplexMatrix32 = Matrix<f32>;
pub type ComplexVector32 = Vector<f32>;
pub type Conjugation32 = Conjugation<f32>;
pub type Tolerances32 = ToleranceConfig<f32>;

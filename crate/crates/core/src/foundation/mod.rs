//! Dense complex matrices, subspaces and the tolerance policy everything else
//! builds on.

mod decomp;
mod jacobi;
mod matrix;
mod subspace;
mod tolerance;

pub use decomp::{
    abs_pair, classify, cluster_sorted, hermitian_eig, image, kernel, kernel_abs, normality_residual, polar_unitary,
    preimage_in, psd_sqrt, rank, svd, Classification, HermitianEig, Svd,
};
pub(crate) use decomp::{hermitian_eig_unchecked, polar_unitary_unchecked, project_out, unit};
pub use matrix::{basis, inner, real_vector, vadd, vconj, vdist, vnorm, vscale, vsub, Matrix, Vector};
pub(crate) use subspace::canonical_frame;
pub use subspace::{orthocomplement, subspace_intersect, Subspace};
pub use tolerance::ToleranceConfig;

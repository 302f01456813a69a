//! M(A), the reduction of `|A|`, `|A*|` to it, and the decision whether `A`
//! is `C`-normal for some conjugation `C`.

mod certificate;
mod decide;
mod mspace;
mod trace;

pub use certificate::{ObstructionCertificate, Word};
pub use decide::{decide_gs, decide_gs_with, DecideOptions, Diagnostics, GsVerdict, SearchStats, Tier, VerdictKind};
pub use mspace::{m_space, m_space_fixpoint, reduce_to_mspace, Reduction};
pub use trace::{cs_trace_test, gs_separation_probe, gs_separation_probe_with, CsTrace, CsVerdict, SeparationProbe};

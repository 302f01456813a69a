use crate::error::{Error, Result};
use crate::scalar::Real;

/// Numerical thresholds shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig<T> {
    /// Relative gap under which two eigenvalues are treated as one cluster.
    pub eig_cluster_rel: T,
    /// Absolute residual allowed for operator identities.
    pub residual_abs: T,
    /// Singular values below `rank_rel · σ_max` count as zero.
    pub rank_rel: T,
}

/// `1e-8, 1e-8, 1e-10` in double precision; in single precision the values
/// are floored at `10³·ε, 10³·ε, 10²·ε`.
impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            eig_cluster_rel: T::lit(1e-8).max(T::lit(1e3) * eps),
            residual_abs: T::lit(1e-8).max(T::lit(1e3) * eps),
            rank_rel: T::lit(1e-10).max(T::lit(1e2) * eps),
        }
    }
}

impl<T: Real> ToleranceConfig<T> {
    pub fn new(eig_cluster_rel: T, residual_abs: T, rank_rel: T) -> Result<Self> {
        let cfg = Self {
            eig_cluster_rel,
            residual_abs,
            rank_rel,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("eig_cluster_rel", self.eig_cluster_rel),
            ("residual_abs", self.residual_abs),
            ("rank_rel", self.rank_rel),
        ] {
            if !(value > T::zero() && value < T::one()) {
                return Err(Error::InvalidTolerance {
                    name,
                    value: value.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    /// `residual_abs · (1 + scale)`.
    pub fn scaled(&self, scale: T) -> T {
        self.residual_abs * (T::one() + scale)
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every rank and inclusion decision.
///
/// * `rank_tol`: singular values below `rank_tol * scale` count as zero.
///   For user-supplied vectors the scale is the largest singular value;
///   for internal matrices assembled from orthonormal bases it is 1.
/// * `angle_tol`: two subspaces are equal when their largest principal
///   angle is below this many radians. Cosine-type residuals (cross-Gram
///   entries, Green identity defects) are compared against it as well.
/// * `psd_floor`: a Hermitian matrix is considered positive semidefinite
///   when its smallest eigenvalue is at least this (non-positive) value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub rank_tol: f64,
    pub angle_tol: f64,
    pub psd_floor: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1e-10,
            angle_tol: 1e-8,
            psd_floor: -1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_tol: f64, angle_tol: f64, psd_floor: f64) -> Result<Self> {
        let cfg = Self {
            rank_tol,
            angle_tol,
            psd_floor,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rank_tol.is_finite() && self.angle_tol.is_finite() && self.psd_floor.is_finite()) {
            return Err(Error::InvalidTolerance("all tolerances must be finite".into()));
        }
        if self.rank_tol <= 0.0 {
            return Err(Error::InvalidTolerance(format!(
                "rank_tol must be positive, got {}",
                self.rank_tol
            )));
        }
        if self.angle_tol < 0.0 {
            return Err(Error::InvalidTolerance(format!(
                "angle_tol must be nonnegative, got {}",
                self.angle_tol
            )));
        }
        if self.psd_floor > 0.0 {
            return Err(Error::InvalidTolerance(format!(
                "psd_floor must not be positive, got {}",
                self.psd_floor
            )));
        }
        Ok(())
    }

    /// Threshold for singular values of matrices built from orthonormal bases.
    pub(crate) fn abs_rank(&self, sigma_max: f64) -> f64 {
        self.rank_tol * sigma_max.max(1.0)
    }
}

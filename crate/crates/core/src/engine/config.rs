use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Knobs of the grid search and refinement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Angular grid over the full circle; `u` uses the half `[0, π)`.
    pub angle_grid_n: usize,
    /// Number of intervals of the parameter grid.
    pub t_grid_n: usize,
    /// Distance kept from the ends of the open parameter domains.
    pub t_margin: f64,
    pub refine_sweeps: usize,
    pub refine_top_k: usize,
    pub refine_tol: f64,
    pub gamma_tol: f64,
    pub sum_zero_tol: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            angle_grid_n: 720,
            t_grid_n: 256,
            t_margin: 1e-4,
            refine_sweeps: 3,
            refine_top_k: 16,
            refine_tol: 1e-10,
            gamma_tol: 1e-12,
            sum_zero_tol: 1e-9,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Argument(m));
        if self.angle_grid_n < 8 || self.angle_grid_n % 2 != 0 {
            return bad(format!("angleGridN must be even and >= 8, got {}", self.angle_grid_n));
        }
        if self.t_grid_n < 8 {
            return bad(format!("tGridN must be >= 8, got {}", self.t_grid_n));
        }
        // The γ-domain (0, 1/2) of DW2 must keep a non-empty interior.
        if !(self.t_margin > 0.0 && self.t_margin < 0.25) {
            return bad(format!("tMargin must lie in (0, 1/4), got {}", self.t_margin));
        }
        if self.refine_top_k == 0 {
            return bad("refineTopK must be >= 1".into());
        }
        for (name, v) in [("refineTol", self.refine_tol), ("gammaTol", self.gamma_tol), ("sumZeroTol", self.sum_zero_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }
}

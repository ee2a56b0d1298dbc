use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::normspace::{build_norm, NormHandle, NormSpec};

use super::config::EngineConfig;
use super::dw::{compute_dw, compute_dw_formulation};
use super::objective::{DWResult, Formulation};

/// Default tolerance for the agreement of the six DW formulations.
pub const EQUIV_TOL: f64 = 5e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceReport {
    /// Triple, DW1, …, DW5 in that order.
    pub results: Vec<DWResult>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl EquivalenceReport {
    pub fn values(&self) -> Vec<(Formulation, f64)> {
        self.results.iter().map(|r| (r.formulation, r.value)).collect()
    }
}

/// Computes all six formulations of `DW(X)` and their largest pairwise gap.
pub fn check_equivalences(norm: &NormHandle, cfg: &EngineConfig) -> Result<EquivalenceReport> {
    let results = Formulation::DW_FAMILY
        .iter()
        .map(|&f| compute_dw_formulation(norm, f, cfg))
        .collect::<Result<Vec<_>>>()?;
    let hi = results.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let lo = results.iter().map(|r| r.value).fold(f64::INFINITY, f64::min);
    let max_deviation = hi - lo;
    Ok(EquivalenceReport { results, max_deviation, tolerance: EQUIV_TOL, pass: max_deviation <= EQUIV_TOL })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualExperiment {
    pub primal: DWResult,
    pub dual: DWResult,
    pub dual_spec: NormSpec,
    pub gap: f64,
}

/// `DW(X)` against `DW(X*)`. Only reports the gap; nothing is asserted.
pub fn dual_experiment(norm: &NormHandle, cfg: &EngineConfig) -> Result<DualExperiment> {
    let dual_spec = NormSpec::dual_of(norm.spec().clone());
    let dual_norm = build_norm(&dual_spec)?;
    let primal = compute_dw(norm, cfg)?;
    let dual = compute_dw(&dual_norm, cfg)?;
    let gap = (primal.value - dual.value).abs();
    Ok(DualExperiment { primal, dual, dual_spec, gap })
}

use crate::error::{Error, Result};
use crate::normspace::NormHandle;

use super::config::EngineConfig;
use super::objective::{objective_value, DWResult, Formulation, Witness};
use super::search::{maximize_pairs, near_boundary, ParamObjective, SegmentObjective};

/// `DW(X)` from the triple form `sup (1+t)‖u−v‖ / ‖u−tv‖`.
pub fn compute_dw(norm: &NormHandle, cfg: &EngineConfig) -> Result<DWResult> {
    compute_dw_formulation(norm, Formulation::Triple, cfg)
}

/// `DW(X)` from one of its equivalent formulations.
///
/// Parameter domains are compactified by `tMargin`: `t, δ, r ∈ [m, 1−m]`
/// (`r` on a logarithmic grid) and `γ ∈ [m, 1/2 − m]`. DW3 has no parameter;
/// its domain excludes pairs with `‖u+v‖ < m`. The boundary flag is raised
/// when the witness is within `2m` of the open domain's boundary.
pub fn compute_dw_formulation(norm: &NormHandle, which: Formulation, cfg: &EngineConfig) -> Result<DWResult> {
    cfg.validate()?;
    let m = cfg.t_margin;
    let best = match which {
        Formulation::DW3 => {
            let obj = SegmentObjective { norm, gamma_upper: 0.5, floor: m, cfg: *cfg };
            maximize_pairs(norm, &obj, cfg)
        }
        Formulation::Triple | Formulation::DW1 | Formulation::DW2 | Formulation::DW4 | Formulation::DW5 => {
            maximize_pairs(norm, &ParamObjective::new(norm, which, cfg), cfg)
        }
        other => return Err(Error::Argument(format!("{other} is not a DW formulation"))),
    }
    .ok_or_else(|| Error::Internal(format!("no finite {which} value on the search grid")))?;

    let witness = Witness { u: best.u, v: best.v, param: best.param };
    let value = objective_value(norm, which, &witness, cfg)?;
    let boundary_flag = match which {
        Formulation::DW3 => norm.norm(best.u + best.v) <= 2.0 * m,
        Formulation::DW2 => near_boundary(best.param, 0.0, 0.5, m),
        _ => near_boundary(best.param, 0.0, 1.0, m),
    };
    Ok(DWResult { value, witness, formulation: which, boundary_flag, config: *cfg })
}

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::birkhoff::orthogonal_companions;
use crate::error::{Error, Result};
use crate::normspace::{unit_vector, NormHandle};
use crate::optim::golden_max;
use crate::vector::Vector2;

use super::config::EngineConfig;
use super::objective::{dw3_with_gamma, objective_value, DWResult, Formulation, Witness};
use super::search::top_k;

#[derive(Clone, Copy, Debug)]
struct Scored {
    value: f64,
    u: Vector2,
    v: Vector2,
    gamma: f64,
}

/// Best DWB3 value over the companions of `u(θ)` and all four sign choices.
fn score(norm: &NormHandle, theta: f64, cfg: &EngineConfig) -> Result<Scored> {
    let u = unit_vector(norm, theta);
    let mut best = Scored { value: f64::NEG_INFINITY, u, v: u, gamma: f64::NAN };
    for pair in orthogonal_companions(norm, u, cfg.angle_grid_n)? {
        for (a, b) in [(u, pair.v), (u, -pair.v), (-u, pair.v), (-u, -pair.v)] {
            if let Ok((val, g)) = dw3_with_gamma(norm, a, b, 1.0, cfg) {
                if val > best.value {
                    best = Scored { value: val, u: a, v: b, gamma: g };
                }
            }
        }
    }
    Ok(best)
}

/// `DW_B(X) = sup ‖u+v‖ / min_{0<γ<1} ‖γu + (1−γ)v‖` over unit `u ⊥_B v`.
///
/// `u` runs over `angle_grid_n / 2` angles of the half circle; the best
/// `refine_top_k` of them are refined by golden section in `θu`.
pub fn compute_dwb(norm: &NormHandle, cfg: &EngineConfig) -> Result<DWResult> {
    cfg.validate()?;
    let m = cfg.angle_grid_n / 2;
    let h = PI / m as f64;
    let grid: Vec<Scored> =
        (0..m).into_par_iter().map(|i| score(norm, i as f64 * h, cfg)).collect::<Result<_>>()?;
    let values: Vec<f64> = grid.iter().map(|s| s.value).collect();
    let starts = top_k(&values, cfg.refine_top_k);

    let refined: Vec<Scored> = starts
        .par_iter()
        .map(|&i| {
            let th = i as f64 * h;
            let mut failure = None;
            let r = golden_max(
                |x| match score(norm, x, cfg) {
                    Ok(s) => s.value,
                    Err(e) => {
                        failure = Some(e);
                        f64::NAN
                    }
                },
                th - h,
                th + h,
                cfg.refine_tol,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            let s = score(norm, r.x, cfg)?;
            Ok(if s.value > grid[i].value { s } else { grid[i] })
        })
        .collect::<Result<_>>()?;
    let best = refined
        .into_iter()
        .enumerate()
        .filter(|(_, s)| s.value.is_finite())
        .min_by(|a, b| b.1.value.total_cmp(&a.1.value).then(a.0.cmp(&b.0)))
        .map(|(_, s)| s)
        .ok_or_else(|| Error::Internal("no orthogonal pair produced a finite value".into()))?;

    let witness = Witness { u: best.u, v: best.v, param: best.gamma };
    let value = objective_value(norm, Formulation::DWB3, &witness, cfg)?;
    Ok(DWResult {
        value,
        witness,
        formulation: Formulation::DWB3,
        boundary_flag: norm.norm(best.u + best.v) <= 2.0 * cfg.t_margin,
        config: *cfg,
    })
}

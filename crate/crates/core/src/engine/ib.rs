use std::f64::consts::PI;

use rayon::prelude::*;

use crate::birkhoff::min_along_line;
use crate::error::{Error, Result};
use crate::normspace::{unit_vector, NormHandle};
use crate::optim::{golden_min, linspace};
use crate::vector::Vector2;

use super::config::EngineConfig;
use super::objective::{objective_value, DWResult, Formulation, Witness};
use super::search::top_k;

/// Radius range of the isosceles partner, `[R_MIN, R_MAX]`.
pub const IB_R_MIN: f64 = 1e-3;
pub const IB_R_MAX: f64 = 1e3;
/// Points of the logarithmic radius grid.
pub const IB_R_GRID_N: usize = 64;
const PARTNER_BISECTIONS: usize = 60;

/// The `y` with `‖y‖ = r` and `‖x+y‖ = ‖x−y‖` on the half circle starting at
/// the direction of `x`, by bisection on the sign of `‖x+y‖ − ‖x−y‖`, which is
/// positive at `θx` and negative at `θx + π`.
pub(crate) fn isosceles_partner(norm: &NormHandle, x: Vector2, theta_x: f64, r: f64) -> Vector2 {
    let y = |phi: f64| r * unit_vector(norm, phi);
    let psi = |phi: f64| {
        let w = y(phi);
        norm.norm(x + w) - norm.norm(x - w)
    };
    let (mut lo, mut hi) = (theta_x, theta_x + PI);
    for _ in 0..PARTNER_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if psi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    y(0.5 * (lo + hi))
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    value: f64,
    x: Vector2,
    y: Vector2,
    theta: f64,
    s: f64,
}

fn cell(norm: &NormHandle, theta: f64, s: f64) -> Result<Cell> {
    let x = unit_vector(norm, theta);
    let y = isosceles_partner(norm, x, theta, s.exp());
    let value = min_along_line(norm, x, y)?.value / norm.norm(x);
    Ok(Cell { value, x, y, theta, s })
}

/// Golden-section minimization of a fallible objective.
fn golden_min_res(f: impl Fn(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    let mut failure = None;
    let r = golden_min(
        |t| match f(t) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                f64::NAN
            }
        },
        a,
        b,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(r.x),
    }
}

/// `IB(X) = inf min_λ ‖x+λy‖ / ‖x‖` over isosceles-orthogonal pairs.
///
/// `x` runs over `angle_grid_n / 2` unit vectors of the half circle and
/// `‖y‖` over a logarithmic grid in `[IB_R_MIN, IB_R_MAX]`. The lowest
/// `refine_top_k` cells are refined by golden section in `θx` on the profile
/// `min over ln‖y‖` (itself a golden search within one grid step). The
/// boundary flag reports a minimizer at either end of the radius range.
pub fn compute_ib(norm: &NormHandle, cfg: &EngineConfig) -> Result<DWResult> {
    cfg.validate()?;
    let m = cfg.angle_grid_n / 2;
    let h = PI / m as f64;
    let (smin, smax) = (IB_R_MIN.ln(), IB_R_MAX.ln());
    let ss = linspace(smin, smax, IB_R_GRID_N);
    let ds = ss[1] - ss[0];

    let cells: Vec<Cell> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| ss.iter().map(move |&s| (i, s)))
        .map(|(i, s)| cell(norm, i as f64 * h, s))
        .collect::<Result<_>>()?;
    let negated: Vec<f64> = cells.iter().map(|c| -c.value).collect();
    let starts = top_k(&negated, cfg.refine_top_k);

    // The valley of the objective runs diagonally in (θx, ln r), so the
    // radius is profiled out and the angle is searched on the profile.
    let profile = |theta: f64, center: f64| -> Result<Cell> {
        let (lo, hi) = ((center - ds).max(smin), (center + ds).min(smax));
        let s = golden_min_res(|s| cell(norm, theta, s).map(|c| c.value), lo, hi, cfg.refine_tol)?;
        let mut best = cell(norm, theta, s)?;
        for end in [lo, hi] {
            let c = cell(norm, theta, end)?;
            if c.value < best.value {
                best = c;
            }
        }
        Ok(best)
    };
    let refined: Vec<Cell> = starts
        .par_iter()
        .map(|&k| {
            let mut best = profile(cells[k].theta, cells[k].s)?;
            if cells[k].value < best.value {
                best = cells[k];
            }
            for _ in 0..cfg.refine_sweeps {
                let center = best.s;
                let th = golden_min_res(
                    |t| profile(t, center).map(|c| c.value),
                    best.theta - h,
                    best.theta + h,
                    cfg.refine_tol,
                )?;
                let c = profile(th, center)?;
                if c.value < best.value {
                    best = c;
                } else {
                    break;
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let best = refined
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .map(|(_, c)| c)
        .ok_or_else(|| Error::Internal("empty IB search".into()))?;

    let lambda = min_along_line(norm, best.x, best.y)?.lambda_star;
    let witness = Witness { u: best.x, v: best.y, param: lambda };
    let value = objective_value(norm, Formulation::IB, &witness, cfg)?;
    // Golden section stops a few tolerances short of a range end.
    let edge = 1e-6;
    Ok(DWResult {
        value,
        witness,
        formulation: Formulation::IB,
        boundary_flag: best.s <= smin + edge || best.s >= smax - edge,
        config: *cfg,
    })
}

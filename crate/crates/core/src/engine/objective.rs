//! Pointwise objectives of the Dunkl-Williams family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::birkhoff::{min_along_line, vertex_birkhoff};
use crate::error::{Error, Result};
use crate::normspace::{NormHandle, PolygonNorm};
use crate::optim::golden_min;
use crate::vector::{wedge, Vector2};

use super::config::EngineConfig;

/// Which supremum a result refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formulation {
    Triple,
    DW1,
    DW2,
    DW3,
    DW4,
    DW5,
    DWB1,
    DWB2,
    DWB3,
    DWB4,
    DWB5,
    IB,
}

impl Formulation {
    /// The six formulations whose suprema all equal `DW(X)`.
    pub const DW_FAMILY: [Formulation; 6] = [
        Formulation::Triple,
        Formulation::DW1,
        Formulation::DW2,
        Formulation::DW3,
        Formulation::DW4,
        Formulation::DW5,
    ];
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Formulation {
    type Err = Error;

    /// Accepts the CLI spellings `triple` and `1`..`5` as well as the names.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "triple" => Formulation::Triple,
            "1" | "dw1" => Formulation::DW1,
            "2" | "dw2" => Formulation::DW2,
            "3" | "dw3" => Formulation::DW3,
            "4" | "dw4" => Formulation::DW4,
            "5" | "dw5" => Formulation::DW5,
            "dwb1" => Formulation::DWB1,
            "dwb2" => Formulation::DWB2,
            "dwb3" => Formulation::DWB3,
            "dwb4" => Formulation::DWB4,
            "dwb5" => Formulation::DWB5,
            "ib" => Formulation::IB,
            other => return Err(Error::Argument(format!("unknown formulation '{other}'"))),
        })
    }
}

/// The point at which a reported value is attained.
///
/// `param` is the formulation's scalar: `t` (Triple, DW5), `r = λ/μ` (DW1),
/// `γ` (DW2), `δ` (DW4). For DW3 and DWB3 it is the minimizing `γ` of the
/// inner infimum and for IB the minimizing `λ`; there it is informational and
/// [`objective_value`] ignores it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub u: Vector2,
    pub v: Vector2,
    pub param: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DWResult {
    pub value: f64,
    pub witness: Witness,
    pub formulation: Formulation,
    pub boundary_flag: bool,
    pub config: EngineConfig,
}

/// `dw(u, v, t) = (1+t)‖u−v‖ / ‖u−tv‖`.
pub fn dw_point(norm: &NormHandle, u: Vector2, v: Vector2, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Argument(format!("t must lie in (0, 1), got {t}")));
    }
    Ok(triple(norm, u, v, t))
}

#[inline]
pub(crate) fn triple(norm: &NormHandle, u: Vector2, v: Vector2, t: f64) -> f64 {
    (1.0 + t) * norm.norm(u - v) / norm.norm(u - t * v)
}

#[inline]
pub(crate) fn dw1(norm: &NormHandle, u: Vector2, v: Vector2, r: f64) -> f64 {
    (1.0 + r) * norm.norm(u + v) / norm.norm(r * u + v)
}

#[inline]
pub(crate) fn dw2(norm: &NormHandle, u: Vector2, v: Vector2, g: f64) -> f64 {
    norm.norm(u + v) / norm.norm(g * u + (1.0 - g) * v)
}

#[inline]
pub(crate) fn dw4(norm: &NormHandle, u: Vector2, v: Vector2, d: f64) -> f64 {
    let s = u + v;
    2.0 * norm.norm(s) / norm.norm(s + d * (u - v))
}

#[inline]
pub(crate) fn dw5(norm: &NormHandle, u: Vector2, v: Vector2, t: f64) -> f64 {
    (1.0 + t) * norm.norm(u + v) / norm.norm(u + t * v)
}

/// `min_{γ ∈ [0, upper]} ‖γa + (1−γ)b‖` by golden section, with the two ends
/// checked explicitly. Returns `(γ*, value)`.
pub(crate) fn segment_min(norm: &NormHandle, a: Vector2, b: Vector2, upper: f64, tol: f64) -> (f64, f64) {
    let d = a - b;
    let f = |g: f64| norm.norm(b + g * d);
    let r = golden_min(f, 0.0, upper, tol);
    let mut best = (r.x, r.value);
    for g in [0.0, upper] {
        let v = f(g);
        if v < best.1 {
            best = (g, v);
        }
    }
    best
}

/// Value of the DW3 objective and the inner minimizer of the binding order.
pub(crate) fn dw3_with_gamma(
    norm: &NormHandle,
    u: Vector2,
    v: Vector2,
    gamma_upper: f64,
    cfg: &EngineConfig,
) -> Result<(f64, f64)> {
    let s = norm.norm(u + v);
    if s <= cfg.sum_zero_tol {
        return Err(Error::ExcludedPair(s));
    }
    let (g1, m1) = segment_min(norm, u, v, gamma_upper, cfg.gamma_tol);
    let (g, m) = if gamma_upper < 1.0 {
        let (g2, m2) = segment_min(norm, v, u, gamma_upper, cfg.gamma_tol);
        if m2 < m1 {
            (g2, m2)
        } else {
            (g1, m1)
        }
    } else {
        (g1, m1)
    };
    Ok((s / m, g))
}

/// `‖u+v‖ / min_{γ ∈ [0, gamma_upper]} ‖γu + (1−γ)v‖`.
///
/// For `gamma_upper < 1` the inner minimum depends on the order of the pair;
/// both orders are evaluated and the larger ratio is returned, which leaves
/// the supremum over ordered pairs unchanged.
pub fn dw3_point(norm: &NormHandle, u: Vector2, v: Vector2, gamma_upper: f64, cfg: &EngineConfig) -> Result<f64> {
    if !(gamma_upper > 0.0 && gamma_upper <= 1.0) {
        return Err(Error::Argument(format!("gammaUpper must lie in (0, 1], got {gamma_upper}")));
    }
    dw3_with_gamma(norm, u, v, gamma_upper, cfg).map(|(v, _)| v)
}

/// Re-evaluates a formulation's objective at a witness.
///
/// For IB, `u` is `x` and `v` is its isosceles partner `y`; the value is
/// `min_λ ‖x+λy‖ / ‖x‖`.
pub fn objective_value(
    norm: &NormHandle,
    formulation: Formulation,
    witness: &Witness,
    cfg: &EngineConfig,
) -> Result<f64> {
    let Witness { u, v, param: p } = *witness;
    let open01 = |p: f64| {
        if p > 0.0 && p < 1.0 {
            Ok(p)
        } else {
            Err(Error::Argument(format!("parameter must lie in (0, 1), got {p}")))
        }
    };
    use Formulation::*;
    Ok(match formulation {
        Triple => triple(norm, u, v, open01(p)?),
        DW1 | DWB1 => dw1(norm, u, v, open01(p)?),
        DW2 | DWB2 => {
            let limit = if formulation == DW2 { 0.5 } else { 1.0 };
            if !(p > 0.0 && p < limit) {
                return Err(Error::Argument(format!("γ must lie in (0, {limit}), got {p}")));
            }
            dw2(norm, u, v, p)
        }
        DW3 => dw3_point(norm, u, v, 0.5, cfg)?,
        DWB3 => dw3_point(norm, u, v, 1.0, cfg)?,
        DW4 | DWB4 => dw4(norm, u, v, open01(p)?),
        DW5 | DWB5 => dw5(norm, u, v, open01(p)?),
        IB => min_along_line(norm, u, v)?.value / norm.norm(u),
    })
}

/// Exact minimum of `γ ↦ ‖γu + (1−γ)v‖` on `[0, gamma_upper]` for a
/// polygonal norm, plus the line certificate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SegmentMin {
    pub gamma_star: f64,
    pub value: f64,
    /// `ρ = min over the whole line through u and v`.
    pub rho: f64,
    /// `ρx = μu + (1−μ)v`.
    pub mu: f64,
    /// Unit point of the line minimum.
    pub x: Vector2,
    /// Whether `x ⊥_B (v − u)` was confirmed by the vertex or edge test.
    pub certified: bool,
}

/// The gauge is linear between consecutive vertex rays, so along the line
/// `v + γ(u − v)` it is piecewise linear with breakpoints where the line
/// crosses a vertex ray. Enumerating those breakpoints gives the minimum on
/// the segment and on the whole line exactly.
pub fn segment_min_polygon(
    poly: &PolygonNorm,
    u: Vector2,
    v: Vector2,
    gamma_upper: f64,
    sum_zero_tol: f64,
) -> Result<SegmentMin> {
    let s = poly.gauge(u + v);
    if s <= sum_zero_tol {
        return Err(Error::ExcludedPair(s));
    }
    let d = u - v;
    let at = |g: f64| poly.gauge(v + g * d);
    let mut breaks: Vec<(f64, usize)> = Vec::with_capacity(poly.len());
    for (k, &p) in poly.vertices().iter().enumerate() {
        let den = wedge(p, d);
        if den != 0.0 {
            let g = -wedge(p, v) / den;
            if g.is_finite() {
                breaks.push((g, k));
            }
        }
    }

    let mut seg = (0.0, at(0.0));
    for g in [gamma_upper] {
        let val = at(g);
        if val < seg.1 {
            seg = (g, val);
        }
    }
    for &(g, _) in &breaks {
        if g > 0.0 && g < gamma_upper {
            let val = at(g);
            if val < seg.1 {
                seg = (g, val);
            }
        }
    }

    let mut line: Option<(f64, f64, usize)> = None;
    for &(g, k) in &breaks {
        let val = at(g);
        if line.map_or(true, |(_, b, _)| val < b) {
            line = Some((g, val, k));
        }
    }
    let (mu, rho, k) = line.ok_or_else(|| Error::Internal("line misses every vertex ray".into()))?;
    let x = (1.0 / rho) * (v + mu * d);
    let (pm, p, pp) = poly.neighbors(k);
    // A line parallel to an edge attains its minimum along that edge, where
    // the edge direction is the orthogonal one; the vertex test covers it.
    let certified = vertex_birkhoff(pm, p, pp, v - u);
    Ok(SegmentMin { gamma_star: seg.0, value: seg.1, rho, mu, x, certified })
}

//! Brute-force reference values on dense uniform grids.
//!
//! Nothing here calls the engine or the line and segment minimizers; only
//! norm evaluation is shared. These routines are slow on purpose.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normspace::NormHandle;
use crate::vector::Vector2;

/// Safe λ bracket for unit `x` and unit `y`: `|λ*| <= 2`.
pub const ORACLE_LAMBDA_BRACKET: (f64, f64) = (-8.0, 8.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct OracleConfig {
    pub angle_n: usize,
    pub t_n: usize,
    pub lambda_n: usize,
    pub gamma_n: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { angle_n: 2000, t_n: 500, lambda_n: 1_000_000, gamma_n: 1_000_000 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.angle_n < 2 || self.t_n < 2 || self.lambda_n < 2 || self.gamma_n < 2 {
            return Err(Error::Argument(format!("oracle grid sizes must be >= 2: {self:?}")));
        }
        Ok(())
    }
}

fn sphere_point(norm: &NormHandle, theta: f64) -> Vector2 {
    let d = Vector2::from_angle(theta);
    (1.0 / norm.norm(d)) * d
}

/// Largest `(1+t)‖u−v‖ / ‖u−tv‖` over `angle_n` directions for `u` and `v`
/// and `t = l/(t_n+1)`, `l = 1..=t_n`.
pub fn oracle_dw(norm: &NormHandle, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let pts: Vec<Vector2> = (0..cfg.angle_n).map(|k| sphere_point(norm, TAU * k as f64 / cfg.angle_n as f64)).collect();
    let ts: Vec<f64> = (1..=cfg.t_n).map(|l| l as f64 / (cfg.t_n + 1) as f64).collect();
    let best = pts
        .par_iter()
        .map(|&u| {
            let mut m = f64::NEG_INFINITY;
            for &v in &pts {
                let num = norm.norm(u - v);
                for &t in &ts {
                    let val = (1.0 + t) * num / norm.norm(u - t * v);
                    if val > m {
                        m = val;
                    }
                }
            }
            m
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(best)
}

/// `min ‖x + λy‖` over `lambda_n` evenly spaced `λ` in `bracket`.
pub fn oracle_line_min(norm: &NormHandle, x: Vector2, y: Vector2, bracket: (f64, f64), lambda_n: usize) -> Result<f64> {
    if y.is_zero() {
        return Err(Error::Argument("direction y must be non-zero".into()));
    }
    if lambda_n < 2 {
        return Err(Error::Argument("lambda grid needs at least 2 points".into()));
    }
    let (a, b) = bracket;
    let step = (b - a) / (lambda_n - 1) as f64;
    Ok((0..lambda_n).map(|i| norm.norm(x + (a + step * i as f64) * y)).fold(f64::INFINITY, f64::min))
}

/// `min ‖γu + (1−γ)v‖` over `gamma_n` evenly spaced `γ` in `[0, gamma_upper]`.
pub fn oracle_gamma_min(norm: &NormHandle, u: Vector2, v: Vector2, gamma_upper: f64, gamma_n: usize) -> Result<f64> {
    if gamma_n < 2 {
        return Err(Error::Argument("gamma grid needs at least 2 points".into()));
    }
    if norm.norm(u + v) == 0.0 {
        return Err(Error::ExcludedPair(0.0));
    }
    let step = gamma_upper / (gamma_n - 1) as f64;
    Ok((0..gamma_n)
        .map(|i| {
            let g = step * i as f64;
            norm.norm(g * u + (1.0 - g) * v)
        })
        .fold(f64::INFINITY, f64::min))
}

/// Brute-force `DW_B` for a polygonal norm.
///
/// Boundary points are sampled along every edge (`angle_n` in total); an
/// interior edge point is orthogonal exactly to the edge direction, a vertex
/// to every direction between its incoming and outgoing edges, sampled with
/// `t_n` directions. Each orthogonal pair and its sign variants are scored by
/// `‖u+v‖` over the minimum of `‖γu + (1−γ)v‖` on a `gamma_n` grid in `[0, 1]`.
pub fn oracle_dwb_polygon(norm: &NormHandle, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let poly = norm
        .polygon()
        .ok_or_else(|| Error::Argument("the DW_B oracle needs a polygonal norm".into()))?;
    let vs = poly.vertices();
    let n = vs.len();
    let per_edge = (cfg.angle_n / n).max(1);
    let mut pairs: Vec<(Vector2, Vector2)> = Vec::new();
    for e in 0..n {
        let (p, q) = (vs[e], vs[(e + 1) % n]);
        let dir = q - p;
        for i in 1..per_edge {
            pairs.push((p + (i as f64 / per_edge as f64) * dir, dir));
        }
        let incoming = p - vs[(e + n - 1) % n];
        let (a0, mut a1) = (incoming.angle(), dir.angle());
        if a1 < a0 {
            a1 += TAU;
        }
        debug_assert!(a1 - a0 < PI);
        for i in 0..=cfg.t_n {
            pairs.push((p, Vector2::from_angle(a0 + (a1 - a0) * i as f64 / cfg.t_n as f64)));
        }
    }
    let best = pairs
        .par_iter()
        .map(|&(u, d)| {
            let v = (1.0 / norm.norm(d)) * d;
            let mut m = f64::NEG_INFINITY;
            for (a, b) in [(u, v), (u, -v)] {
                let s = norm.norm(a + b);
                if s == 0.0 {
                    continue;
                }
                let step = 1.0 / (cfg.gamma_n - 1) as f64;
                let inner = (0..cfg.gamma_n)
                    .map(|i| {
                        let g = step * i as f64;
                        norm.norm(g * a + (1.0 - g) * b)
                    })
                    .fold(f64::INFINITY, f64::min);
                m = m.max(s / inner);
            }
            m
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(best)
}

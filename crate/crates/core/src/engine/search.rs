//! Grid search with local refinement over pairs of unit vectors.
//!
//! Every objective is even under `(u, v) → (−u, −v)`, so `u` ranges over the
//! half circle and `v` over the full one. A scalar parameter, when present,
//! is profiled out: for each pair the objective is maximized over the
//! parameter grid and then by golden section around the best grid cell. All
//! parameterized objectives are ratios of the form `linear / convex` in the
//! parameter, hence quasiconcave, so the profile is exact up to rounding.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::normspace::{unit_vector, NormHandle};
use crate::optim::{golden_max, linspace};
use crate::vector::Vector2;

use super::config::EngineConfig;
use super::objective::{dw1, dw2, dw3_with_gamma, dw4, dw5, triple, Formulation};

/// A best point found by [`maximize_pairs`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct PairMax {
    pub value: f64,
    pub u: Vector2,
    pub v: Vector2,
    /// Natural parameter of the formulation.
    pub param: f64,
}

/// Objective over pairs of unit vectors, with an optional profiled parameter.
pub(crate) trait PairObjective: Sync {
    /// Profiled value and the natural parameter where it is attained.
    fn fine(&self, u: Vector2, v: Vector2) -> (f64, f64);
}

/// The formulations with a scalar parameter: Triple, DW1, DW2, DW4, DW5.
pub(crate) struct ParamObjective<'a> {
    norm: &'a NormHandle,
    kind: Formulation,
    grid: Vec<f64>,
}

impl<'a> ParamObjective<'a> {
    pub fn new(norm: &'a NormHandle, kind: Formulation, cfg: &EngineConfig) -> Self {
        let m = cfg.t_margin;
        let n = cfg.t_grid_n + 1;
        let grid = match kind {
            Formulation::DW1 => linspace(m.ln(), (1.0 - m).ln(), n),
            Formulation::DW2 => linspace(m, 0.5 - m, n),
            _ => linspace(m, 1.0 - m, n),
        };
        ParamObjective { norm, kind, grid }
    }

    /// Maps the search coordinate to the formulation's parameter.
    #[inline]
    fn natural(&self, s: f64) -> f64 {
        if self.kind == Formulation::DW1 {
            s.exp()
        } else {
            s
        }
    }

    #[inline]
    fn eval(&self, u: Vector2, v: Vector2, s: f64) -> f64 {
        let p = self.natural(s);
        let n = self.norm;
        match self.kind {
            Formulation::Triple => triple(n, u, v, p),
            Formulation::DW1 => dw1(n, u, v, p),
            Formulation::DW2 => dw2(n, u, v, p),
            Formulation::DW4 => dw4(n, u, v, p),
            Formulation::DW5 => dw5(n, u, v, p),
            other => unreachable!("{other} has no scalar parameter"),
        }
    }

    fn grid_argmax(&self, u: Vector2, v: Vector2) -> (f64, usize) {
        let mut best = (f64::NEG_INFINITY, 0);
        for (k, &s) in self.grid.iter().enumerate() {
            let val = self.eval(u, v, s);
            if val > best.0 {
                best = (val, k);
            }
        }
        best
    }
}

impl PairObjective for ParamObjective<'_> {
    fn fine(&self, u: Vector2, v: Vector2) -> (f64, f64) {
        let (gv, k) = self.grid_argmax(u, v);
        let last = self.grid.len() - 1;
        let lo = self.grid[k.saturating_sub(1)];
        let hi = self.grid[(k + 1).min(last)];
        // Near the ends of the domain the peak in the parameter has slope of
        // order 1/margin², so it is resolved to machine precision.
        let r = golden_max(|s| self.eval(u, v, s), lo, hi, 0.0);
        if r.value > gv {
            (r.value, self.natural(r.x))
        } else {
            (gv, self.natural(self.grid[k]))
        }
    }
}

/// DW3 (`gamma_upper = 1/2`) and DWB3 (`gamma_upper = 1`) objectives.
///
/// Pairs with `‖u+v‖ < floor` are outside the compactified domain.
pub(crate) struct SegmentObjective<'a> {
    pub norm: &'a NormHandle,
    pub gamma_upper: f64,
    pub floor: f64,
    pub cfg: EngineConfig,
}

impl PairObjective for SegmentObjective<'_> {
    fn fine(&self, u: Vector2, v: Vector2) -> (f64, f64) {
        if self.norm.norm(u + v) < self.floor {
            return (f64::NEG_INFINITY, f64::NAN);
        }
        match dw3_with_gamma(self.norm, u, v, self.gamma_upper, &self.cfg) {
            Ok(r) => r,
            Err(_) => (f64::NEG_INFINITY, f64::NAN),
        }
    }
}

/// Orders by value, larger first, then by index, smaller first.
fn rank(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    b.0.total_cmp(&a.0).then(a.1.cmp(&b.1))
}

/// Indices of the `k` best finite values, best first.
pub(crate) fn top_k(values: &[f64], k: usize) -> Vec<usize> {
    let mut cells: Vec<(f64, usize)> =
        values.iter().copied().enumerate().filter(|(_, v)| v.is_finite()).map(|(i, v)| (v, i)).collect();
    if cells.len() > k {
        cells.select_nth_unstable_by(k - 1, rank);
        cells.truncate(k);
    }
    cells.sort_by(rank);
    cells.into_iter().map(|(_, i)| i).collect()
}

/// Maximizes `obj` over pairs of unit vectors.
///
/// Cells are ranked by their profiled value: near a supremum approached at
/// the end of the parameter domain the peak in the parameter is narrower than
/// the parameter grid, and raw grid values would misrank the cells.
///
/// Coarse grid: `u` at `angle_grid_n / 2` angles in `[0, π)`, `v` at
/// `angle_grid_n` angles in `[0, 2π)`. The `refine_top_k` best cells are each
/// refined by `refine_sweeps` rounds of golden section along `θu`, `θv` and
/// both diagonals, each within one grid step of the current point. Ties
/// resolve to the lowest cell index, so the result depends only on the
/// configuration.
pub(crate) fn maximize_pairs(norm: &NormHandle, obj: &impl PairObjective, cfg: &EngineConfig) -> Option<PairMax> {
    let n = cfg.angle_grid_n;
    let half = n / 2;
    let h = TAU / n as f64;
    let units: Vec<Vector2> = (0..n).map(|j| unit_vector(norm, j as f64 * h)).collect();

    let values: Vec<f64> = (0..half)
        .into_par_iter()
        .flat_map_iter(|i| {
            let u = units[i];
            units.iter().map(move |&v| obj.fine(u, v).0)
        })
        .collect();

    let starts = top_k(&values, cfg.refine_top_k);
    let refined: Vec<(f64, usize, PairMax)> = starts
        .par_iter()
        .enumerate()
        .map(|(rank, &cell)| {
            let (i, j) = (cell / n, cell % n);
            let p = refine(norm, obj, i as f64 * h, j as f64 * h, h, cfg);
            (p.value, rank, p)
        })
        .collect();
    refined
        .into_iter()
        .filter(|r| r.0.is_finite())
        .min_by(|a, b| rank(&(a.0, a.1), &(b.0, b.1)))
        .map(|r| r.2)
}

/// Line directions in `(θu, θv)` for one refinement sweep. The diagonals let
/// the search follow ridges that are not aligned with either angle.
const SWEEP_DIRECTIONS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)];

fn refine(norm: &NormHandle, obj: &impl PairObjective, tu: f64, tv: f64, h: f64, cfg: &EngineConfig) -> PairMax {
    let (mut tu, mut tv) = (tu, tv);
    let (mut best, mut param) = obj.fine(unit_vector(norm, tu), unit_vector(norm, tv));
    for _ in 0..cfg.refine_sweeps {
        for (du, dv) in SWEEP_DIRECTIONS {
            let at = |s: f64| obj.fine(unit_vector(norm, tu + s * du), unit_vector(norm, tv + s * dv));
            let r = golden_max(|s| at(s).0, -h, h, cfg.refine_tol);
            let (val, p) = at(r.x);
            if val > best {
                (best, param, tu, tv) = (val, p, tu + r.x * du, tv + r.x * dv);
            }
        }
    }
    PairMax {
        value: best,
        u: unit_vector(norm, tu.rem_euclid(TAU)),
        v: unit_vector(norm, tv.rem_euclid(TAU)),
        param,
    }
}

/// Whether a parameter sits within `2·margin` of the ends of `(lo, hi)`.
pub(crate) fn near_boundary(p: f64, lo: f64, hi: f64, margin: f64) -> bool {
    p <= lo + 2.0 * margin || p >= hi - 2.0 * margin
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_k_is_ordered_and_stable() {
        let v = [1.0, 3.0, f64::NAN, 3.0, 2.0, f64::NEG_INFINITY];
        assert_eq!(top_k(&v, 3), vec![1, 3, 4]);
        assert_eq!(top_k(&v, 10), vec![1, 3, 4, 0]);
    }

    #[test]
    fn boundary_test() {
        assert!(near_boundary(1.0 - 1e-4, 0.0, 1.0, 1e-4));
        assert!(!near_boundary(0.5, 0.0, 1.0, 1e-4));
    }
}

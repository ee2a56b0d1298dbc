use std::f64::consts::TAU;

use crate::optim::golden_max;
use crate::vector::Vector2;

use super::handle::NormHandle;
use super::sphere::unit_vector;

/// Angular grid size for the numerical support function.
pub const DUAL_GRID_N: usize = 2048;

/// Target accuracy of [`dual_eval`].
pub const DUAL_TOL: f64 = 1e-8;

/// Support function of the unit ball of `inner`: `sup { x·y : ‖x‖ <= 1 }`.
///
/// Exact for polygonal balls (max over vertices). Otherwise the sphere is
/// scanned on a uniform angular grid and the best cell is refined by golden
/// section on the two neighbouring arcs.
pub fn dual_eval(inner: &NormHandle, y: Vector2) -> f64 {
    if y.is_zero() {
        return 0.0;
    }
    if let Some(p) = inner.polygon() {
        return p.vertices().iter().map(|v| v.dot(y)).fold(f64::NEG_INFINITY, f64::max);
    }
    let h = TAU / DUAL_GRID_N as f64;
    let f = |th: f64| unit_vector(inner, th).dot(y);
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..DUAL_GRID_N {
        let v = f(k as f64 * h);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let c = best_k as f64 * h;
    let r = golden_max(f, c - h, c + h, DUAL_TOL * 1e-3);
    best.max(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normspace::build_norm;
    use crate::normspace::spec::NormSpec;

    fn build(s: &str) -> NormHandle {
        build_norm(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn known_support_values() {
        assert!((dual_eval(&build("lp:inf"), Vector2::new(1.0, 1.0)) - 2.0).abs() < DUAL_TOL);
        assert!((dual_eval(&build("mixed:2,1"), Vector2::new(0.0, 1.0)) - 1.0).abs() < DUAL_TOL);
        let sq = build("polygon:1,1;-1,1;-1,-1;1,-1");
        assert_eq!(dual_eval(&sq, Vector2::new(1.0, 0.0)), 1.0);
    }

    #[test]
    fn mixed_dual_matches_conjugate_mixed() {
        let inner = build("mixed:2,1");
        let conj = build("mixed:2,inf");
        for k in 0..720 {
            let y = Vector2::from_angle(TAU * k as f64 / 720.0);
            assert!((dual_eval(&inner, y) - conj.norm(y)).abs() <= DUAL_TOL, "k={k}");
        }
    }

    #[test]
    fn numeric_route_agrees_with_closed_forms() {
        for s in ["lp:3", "lp:1.5", "mixed:inf,1", "mixed:1,2", "mixed:3,1.5"] {
            let inner = build(s);
            let closed = build_norm(&NormSpec::dual_of(s.parse().unwrap())).unwrap();
            for k in 0..360 {
                let y = Vector2::from_angle(TAU * k as f64 / 360.0 + 0.01);
                let d = dual_eval(&inner, y);
                assert!((d - closed.norm(y)).abs() <= DUAL_TOL, "{s} k={k}: {d} vs {}", closed.norm(y));
            }
        }
    }

    #[test]
    fn polygon_dual_is_polar_gauge() {
        for s in ["regular:12", "polygon:1,0;1,1;0,1;-1,0;-1,-1;0,-1", "regular:8"] {
            let inner = build(s);
            let dual = build_norm(&NormSpec::dual_of(s.parse().unwrap())).unwrap();
            for k in 0..360 {
                let y = Vector2::from_angle(TAU * k as f64 / 360.0);
                assert!((dual_eval(&inner, y) - dual.norm(y)).abs() <= 1e-9, "{s} k={k}");
            }
        }
    }
}

use std::f64::consts::TAU;

use dwconst::birkhoff::{baronti_check, is_birkhoff, min_along_line, orthogonal_companions, vertex_birkhoff, ORTHO_TOL};
use dwconst::oracle::{oracle_line_min, ORACLE_LAMBDA_BRACKET};
use dwconst::{build_norm, unit_vector, NormHandle, Vector2};
use proptest::prelude::*;

const SHIPPED: [&str; 5] = ["mixed:inf,1", "mixed:2,1", "lp:inf", "regular:12", "lp:2"];

fn build(s: &str) -> NormHandle {
    build_norm(&s.parse().unwrap()).unwrap()
}

fn any_shipped() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SHIPPED.to_vec())
}

fn any_angle() -> impl Strategy<Value = f64> {
    0.0..TAU
}

fn lambda_step(n: usize) -> f64 {
    (ORACLE_LAMBDA_BRACKET.1 - ORACLE_LAMBDA_BRACKET.0) / (n - 1) as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    // The grid value exceeds the true minimum by at most ‖y‖·step/2.
    #[test]
    fn line_min_never_worse_than_grid(spec in any_shipped(), a in any_angle(), b in any_angle()) {
        let n = build(spec);
        let (x, y) = (unit_vector(&n, a), unit_vector(&n, b));
        prop_assume!(x.wedge(y).abs() > 1e-3);
        let lambda_n = 1_000_000;
        let engine = min_along_line(&n, x, y).unwrap().value;
        let grid = oracle_line_min(&n, x, y, ORACLE_LAMBDA_BRACKET, lambda_n).unwrap();
        prop_assert!(engine <= grid + 1e-12, "{spec}: engine {engine} grid {grid}");
        prop_assert!(grid - engine <= 1e-6 + 0.5 * lambda_step(lambda_n), "{spec}: engine {engine} grid {grid}");
    }

    #[test]
    fn orthogonality_is_homogeneous(spec in any_shipped(), a in any_angle(), s in 0.1..10.0f64, t in -10.0..10.0f64) {
        prop_assume!(t.abs() > 0.1);
        let n = build(spec);
        let u = unit_vector(&n, a);
        for pair in orthogonal_companions(&n, u, 720).unwrap() {
            let (ok, d) = is_birkhoff(&n, s * u, t * pair.v).unwrap();
            prop_assert!(ok, "{spec}: {} ⊥ {} defect {d:e}", s * u, t * pair.v);
        }
    }

    #[test]
    fn vertex_cone_agrees_with_line_minimum(spec in prop::sample::select(vec!["regular:12", "lp:inf", "mixed:inf,1", "regular:8", "dual(regular:12)"]), k in 0usize..64, b in any_angle()) {
        let n = build(if spec == "lp:inf" { "polygon:1,1;-1,1;-1,-1;1,-1" } else if spec == "mixed:inf,1" { "polygon:1,0;1,1;0,1;-1,0;-1,-1;0,-1" } else { spec });
        let poly = n.polygon().unwrap();
        let (pm, p, pp) = poly.neighbors(k % poly.len());
        let x = Vector2::from_angle(b);
        // Stay away from the cone boundary, where both sides are tolerance-bound.
        for e in [p - pm, pp - p] {
            let s = x.wedge(e).abs() / e.euclidean();
            prop_assume!(s > 1e-6);
        }
        let exact = vertex_birkhoff(pm, p, pp, x);
        let (numeric, d) = is_birkhoff(&n, p, x).unwrap();
        prop_assert_eq!(exact, numeric, "{} at {} along {} defect {:e}", spec, p, x, d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn line_min_matches_fine_grid(spec in any_shipped(), a in any_angle(), b in any_angle()) {
        let n = build(spec);
        let (x, y) = (unit_vector(&n, a), unit_vector(&n, b));
        prop_assume!(x.wedge(y).abs() > 1e-3);
        // Step 1e-6 on the bracket: the grid is within 5e-7·‖y‖ of the minimum.
        let lambda_n = 16_000_001;
        let engine = min_along_line(&n, x, y).unwrap().value;
        let grid = oracle_line_min(&n, x, y, ORACLE_LAMBDA_BRACKET, lambda_n).unwrap();
        prop_assert!((engine - grid).abs() <= 1e-6, "{spec}: engine {engine} grid {grid}");
    }
}

#[test]
fn every_grid_direction_has_a_companion() {
    for s in SHIPPED {
        let n = build(s);
        for k in 0..720 {
            let u = unit_vector(&n, TAU * k as f64 / 720.0);
            let pairs = orthogonal_companions(&n, u, 720).unwrap();
            assert!(!pairs.is_empty(), "{s} k={k}");
            for p in pairs {
                assert!(p.defect <= ORTHO_TOL, "{s} k={k}: {} defect {:e}", p.v, p.defect);
                assert!((n.norm(p.v) - 1.0).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn euclidean_sum_and_difference_stay_orthogonal() {
    let n = build("lp:2");
    for k in 0..720 {
        let u = unit_vector(&n, TAU * k as f64 / 720.0);
        for p in orthogonal_companions(&n, u, 720).unwrap() {
            let (ok, d) = baronti_check(&n, p.u, p.v).unwrap();
            assert!(ok, "k={k}: defect {d:e}");
        }
    }
}

#[test]
fn hexagon_sum_and_difference_fail_somewhere() {
    let n = build("mixed:inf,1");
    let failures = (0..720)
        .flat_map(|k| orthogonal_companions(&n, unit_vector(&n, TAU * k as f64 / 720.0), 720).unwrap())
        .filter(|p| !baronti_check(&n, p.u, p.v).unwrap().0)
        .count();
    assert!(failures > 0);
}

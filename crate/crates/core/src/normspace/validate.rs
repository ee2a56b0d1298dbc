use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::vector::Vector2;

use super::handle::NormHandle;

/// Tolerance for both sampled checks.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Number of offending pairs kept in a report.
const MAX_FAILURES: usize = 16;

/// Outcome of a sampled norm-axiom check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub is_norm: bool,
    pub symmetry_defect: f64,
    pub worst_triangle_violation: f64,
    pub samples_used: usize,
    pub failures: Vec<(Vector2, Vector2, f64)>,
}

/// Samples `samples` pairs from a seeded generator and checks
/// `‖a+b‖ <= ‖a‖+‖b‖` and `‖−a‖ = ‖a‖`.
///
/// Half the pairs are nearly parallel, where a non-convex gauge shows up
/// first.
pub fn validate_norm(handle: &NormHandle, samples: usize, seed: u64) -> ValidationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sym = 0.0_f64;
    let mut worst = f64::NEG_INFINITY;
    let mut failures = Vec::new();
    for i in 0..samples {
        let ta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let ra: f64 = rng.gen_range(0.1..2.0);
        let tb = if i % 2 == 0 {
            rng.gen_range(0.0..std::f64::consts::TAU)
        } else {
            ta + rng.gen_range(-0.05..0.05)
        };
        let rb: f64 = rng.gen_range(0.1..2.0);
        let a = ra * Vector2::from_angle(ta);
        let b = rb * Vector2::from_angle(tb);
        let na = handle.norm(a);
        sym = sym.max((handle.norm(-a) - na).abs());
        let viol = handle.norm(a + b) - na - handle.norm(b);
        worst = worst.max(viol);
        if viol > VALIDATION_TOL && failures.len() < MAX_FAILURES {
            failures.push((a, b, viol));
        }
    }
    let worst = if samples == 0 { 0.0 } else { worst };
    ValidationReport {
        is_norm: sym <= VALIDATION_TOL && worst <= VALIDATION_TOL,
        symmetry_defect: sym,
        worst_triangle_violation: worst,
        samples_used: samples,
        failures,
    }
}

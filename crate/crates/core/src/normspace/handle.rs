use std::sync::Arc;

use crate::error::Result;
use crate::vector::Vector2;

use super::polygon::{polar_polygon, regular_vertices, PolygonNorm};
use super::spec::{Exponent, NormSpec};

/// Pre-classified ℓp exponent so the hot path is a cheap match.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Lp {
    One,
    Two,
    Inf,
    General(f64),
}

impl From<Exponent> for Lp {
    fn from(p: Exponent) -> Self {
        let v = p.value();
        if v == 1.0 {
            Lp::One
        } else if v == 2.0 {
            Lp::Two
        } else if v.is_infinite() {
            Lp::Inf
        } else {
            Lp::General(v)
        }
    }
}

impl Lp {
    #[inline]
    fn eval(self, x: f64, y: f64) -> f64 {
        let (a, b) = (x.abs(), y.abs());
        match self {
            Lp::One => a + b,
            Lp::Two => (a * a + b * b).sqrt(),
            Lp::Inf => a.max(b),
            Lp::General(p) => {
                let m = a.max(b);
                if m == 0.0 {
                    0.0
                } else {
                    let (ra, rb) = (a / m, b / m);
                    m * (ra.powf(p) + rb.powf(p)).powf(1.0 / p)
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Evaluator {
    Lp(Lp),
    Mixed { same: Lp, opp: Lp },
    Polygon(Arc<PolygonNorm>),
}

/// An evaluable norm built from a [`NormSpec`]. Immutable and cheap to clone.
#[derive(Clone, Debug)]
pub struct NormHandle {
    spec: NormSpec,
    eval: Evaluator,
}

/// Builds the evaluator for `spec`.
///
/// Duals are resolved in closed form: the dual of an ℓp norm is ℓp′, the dual
/// of a quadrant-mixed norm is the mixed norm of the conjugate exponents (the
/// support point of a first-quadrant direction always lies on the
/// first-quadrant arc), and the dual of a polygonal norm is the gauge of its
/// polar polygon. [`super::dual_eval`] computes the same support function
/// numerically and is the cross-check for this reduction.
pub fn build_norm(spec: &NormSpec) -> Result<NormHandle> {
    Ok(NormHandle { spec: spec.clone(), eval: evaluator_for(spec)? })
}

fn evaluator_for(spec: &NormSpec) -> Result<Evaluator> {
    Ok(match spec {
        NormSpec::Lp(p) => Evaluator::Lp((*p).into()),
        NormSpec::Mixed { same, opp } => Evaluator::Mixed { same: (*same).into(), opp: (*opp).into() },
        NormSpec::Polygon(vs) => Evaluator::Polygon(Arc::new(PolygonNorm::new(vs.clone())?)),
        NormSpec::RegularPolygon(n) => Evaluator::Polygon(Arc::new(PolygonNorm::new(regular_vertices(*n)?)?)),
        NormSpec::DualOf(inner) => match evaluator_for(inner)? {
            Evaluator::Lp(_) | Evaluator::Mixed { .. } => evaluator_for(&conjugate_spec(inner)?)?,
            Evaluator::Polygon(p) => {
                Evaluator::Polygon(Arc::new(PolygonNorm::new(polar_polygon(p.vertices())?)?))
            }
        },
    })
}

/// Closed-form dual description for the smooth-family specs.
fn conjugate_spec(spec: &NormSpec) -> Result<NormSpec> {
    Ok(match spec {
        NormSpec::Lp(p) => NormSpec::Lp(p.conjugate()),
        NormSpec::Mixed { same, opp } => NormSpec::Mixed { same: same.conjugate(), opp: opp.conjugate() },
        NormSpec::DualOf(inner) => (**inner).clone(),
        other => other.clone(),
    })
}

impl NormHandle {
    /// `‖v‖`.
    #[inline]
    pub fn norm(&self, v: Vector2) -> f64 {
        match &self.eval {
            Evaluator::Lp(p) => p.eval(v.x1, v.x2),
            Evaluator::Mixed { same, opp } => {
                if v.x1 * v.x2 >= 0.0 {
                    same.eval(v.x1, v.x2)
                } else {
                    opp.eval(v.x1, v.x2)
                }
            }
            Evaluator::Polygon(p) => p.gauge(v),
        }
    }

    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    /// Polygon data when the unit sphere is a polygon described by vertices
    /// (polygon and regular specs, and duals of those).
    pub fn polygon(&self) -> Option<&PolygonNorm> {
        match &self.eval {
            Evaluator::Polygon(p) => Some(p),
            _ => None,
        }
    }

    /// `v / ‖v‖`.
    #[inline]
    pub fn normalize(&self, v: Vector2) -> Vector2 {
        (1.0 / self.norm(v)) * v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> NormHandle {
        build_norm(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn hexagonal_mixed_norm() {
        let n = build("mixed:inf,1");
        assert_eq!(n.norm(Vector2::new(1.0, -0.5)), 1.5);
        assert_eq!(n.norm(Vector2::new(1.0, 0.5)), 1.0);
        assert_eq!(n.norm(Vector2::new(0.0, -2.0)), 2.0);
    }

    #[test]
    fn euclidean_and_twelve_gon() {
        assert_eq!(build("lp:2").norm(Vector2::new(3.0, 4.0)), 5.0);
        let d = build("regular:12");
        let p1 = Vector2::new(3f64.sqrt() / 2.0, 0.5);
        assert!((d.norm(p1) - 1.0).abs() < 1e-15);
        assert!(d.polygon().is_some());
    }

    #[test]
    fn general_exponent() {
        let n = build("lp:3");
        let want = (27.0f64 + 8.0).powf(1.0 / 3.0);
        assert!((n.norm(Vector2::new(3.0, -2.0)) - want).abs() < 1e-14);
    }

    #[test]
    fn duals_resolve_in_closed_form() {
        let d = build("dual(mixed:2,1)");
        let m = build("mixed:2,inf");
        for k in 0..64 {
            let v = Vector2::from_angle(k as f64 * 0.1);
            assert_eq!(d.norm(v), m.norm(v));
        }
        let sq = build("dual(lp:inf)");
        assert_eq!(sq.norm(Vector2::new(1.0, 1.0)), 2.0);
        let dd = build("dual(dual(lp:3))");
        assert_eq!(dd.norm(Vector2::new(1.0, 2.0)), build("lp:3").norm(Vector2::new(1.0, 2.0)));
        let dp = build("dual(polygon:1,1;-1,1;-1,-1;1,-1)");
        assert_eq!(dp.norm(Vector2::new(1.0, 0.0)), 1.0);
        assert_eq!(dp.norm(Vector2::new(0.5, 0.5)), 1.0);
    }

    #[test]
    fn spec_errors() {
        assert!(build_norm(&NormSpec::RegularPolygon(5)).is_err());
        assert!(build_norm(&NormSpec::Polygon(vec![Vector2::new(1.0, 0.0)])).is_err());
    }
}

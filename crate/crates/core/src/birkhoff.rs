//! Minimization along lines and Birkhoff orthogonality.
//!
//! `x ⊥_B y` means `‖x + λy‖ >= ‖x‖` for every real `λ`. Since `λ ↦ ‖x+λy‖`
//! is convex, a bracket plus golden-section search finds its minimum, and the
//! orthogonality defect `‖x‖ − min_λ ‖x+λy‖` is never negative.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normspace::{unit_vector, NormHandle, SphereLocation};
use crate::optim::golden_min;
use crate::vector::Vector2;

pub use crate::vector::wedge;

/// Final bracket width of the line search.
pub const LINE_TOL: f64 = 1e-12;
/// Relative orthogonality tolerance.
pub const ORTHO_TOL: f64 = 1e-9;
/// Absolute tolerance of the polygon wedge tests.
pub const WEDGE_TOL: f64 = 1e-12;
/// Grid defects below this are refined by the companion search.
pub const COARSE_TOL: f64 = 1e-2;
/// Bracket expansion stops here; only a broken evaluator gets this far.
const BRACKET_CAP: f64 = (1u64 << 20) as f64;
/// Bisection steps used to pin the ends of a zero-defect arc.
const PLATEAU_BISECTIONS: usize = 60;
/// Defect accepted inside an arc while pinning its ends. Well below
/// [`ORTHO_TOL`] so the reported ends stay orthogonal after normalization.
const PLATEAU_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LineMinResult {
    pub lambda_star: f64,
    pub value: f64,
    pub iterations: usize,
}

/// A unit vector `u` together with a unit `v` such that `u ⊥_B v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthoPair {
    pub u: Vector2,
    pub v: Vector2,
    pub defect: f64,
}

/// Minimizes `λ ↦ ‖x + λy‖`.
///
/// On polyhedral pieces the minimizer is an interval; only `value` is
/// meaningful then.
pub fn min_along_line(norm: &NormHandle, x: Vector2, y: Vector2) -> Result<LineMinResult> {
    if y.is_zero() {
        return Err(Error::Argument("direction y must be non-zero".into()));
    }
    let g = |l: f64| norm.norm(x + l * y);
    let g0 = g(0.0);
    let mut l = 1.0;
    let mut evals = 1;
    loop {
        evals += 2;
        if g(l) >= g0 && g(-l) >= g0 {
            break;
        }
        l *= 2.0;
        if l > BRACKET_CAP {
            return Err(Error::Internal(format!(
                "no bracket for the line minimum along {y} from {x}; is the evaluator a norm?"
            )));
        }
    }
    let r = golden_min(g, -l, l, LINE_TOL);
    evals += r.evaluations;
    let (lambda_star, value) = if g0 <= r.value { (0.0, g0) } else { (r.x, r.value) };
    Ok(LineMinResult { lambda_star, value, iterations: evals })
}

/// Tests `x ⊥_B y`; the defect is `‖x‖ − min_λ ‖x+λy‖`.
pub fn is_birkhoff(norm: &NormHandle, x: Vector2, y: Vector2) -> Result<(bool, f64)> {
    if x.is_zero() {
        return Err(Error::Argument("x must be non-zero".into()));
    }
    let nx = norm.norm(x);
    let m = min_along_line(norm, x, y)?;
    let defect = nx - m.value;
    Ok((defect <= ORTHO_TOL * nx, defect))
}

/// Exact orthogonality at a polygon vertex.
///
/// `p_minus`, `p`, `p_plus` are consecutive vertices listed counterclockwise.
/// `p ⊥_B x` iff `x` or `−x` lies in the cone swept counterclockwise from the
/// incoming edge `p − p⁻` to the outgoing edge `p⁺ − p`.
pub fn vertex_birkhoff(p_minus: Vector2, p: Vector2, p_plus: Vector2, x: Vector2) -> bool {
    let a = p - p_minus;
    let b = p_plus - p;
    let in_cone = |x: Vector2| wedge(a, x) >= -WEDGE_TOL && wedge(x, b) >= -WEDGE_TOL;
    in_cone(x) || in_cone(-x)
}

/// Unit vectors `v` with `u ⊥_B v`, one per sign class.
///
/// Polygonal norms use the exact vertex and edge description: an edge point
/// is orthogonal only to the edge direction, a vertex to a closed cone, which
/// is reported by its two ends and its bisector. Other norms are scanned over
/// `angle_grid_n` directions in `[0, π)`; zero-defect arcs are reported the
/// same way as cones and isolated minima are refined.
pub fn orthogonal_companions(norm: &NormHandle, u: Vector2, angle_grid_n: usize) -> Result<Vec<OrthoPair>> {
    if u.is_zero() {
        return Err(Error::Argument("u must be non-zero".into()));
    }
    if angle_grid_n < 16 {
        return Err(Error::Argument(format!("angle grid needs at least 16 points, got {angle_grid_n}")));
    }
    let dirs = match norm.polygon() {
        Some(poly) => match poly.locate(u) {
            SphereLocation::Edge(e) => vec![poly.edge_direction(e)],
            SphereLocation::Vertex(k) => {
                let (pm, p, pp) = poly.neighbors(k);
                cone_representatives(p - pm, pp - p)
            }
        },
        None => scan_companions(norm, u, angle_grid_n)?,
    };
    let mut out: Vec<OrthoPair> = Vec::with_capacity(dirs.len());
    for d in dirs {
        let v = norm.normalize(d);
        if out.iter().any(|q| wedge(q.v, v).abs() <= 1e-12) {
            continue;
        }
        let (_, defect) = is_birkhoff(norm, u, v)?;
        out.push(OrthoPair { u, v, defect: defect.max(0.0) });
    }
    if out.is_empty() {
        return Err(Error::Internal(format!("no Birkhoff companion found for {u}")));
    }
    Ok(out)
}

fn cone_representatives(a: Vector2, b: Vector2) -> Vec<Vector2> {
    let a1 = (1.0 / a.euclidean()) * a;
    let b1 = (1.0 / b.euclidean()) * b;
    vec![a1, a1 + b1, b1]
}

fn scan_companions(norm: &NormHandle, u: Vector2, n: usize) -> Result<Vec<Vector2>> {
    let nu = norm.norm(u);
    let defect = |th: f64| -> Result<f64> {
        let m = min_along_line(norm, u, Vector2::from_angle(th))?;
        Ok(((nu - m.value) / nu).max(0.0))
    };
    let h = PI / n as f64;
    let theta = |k: isize| k as f64 * h;
    let d: Vec<f64> = (0..n).map(|k| defect(theta(k as isize))).collect::<Result<_>>()?;
    let at = |k: isize| d[k.rem_euclid(n as isize) as usize];
    let zero = |k: isize| at(k) <= ORTHO_TOL;

    let mut found = Vec::new();
    let mut in_run = vec![false; n];
    if (0..n as isize).all(zero) {
        return Err(Error::Internal(format!("every direction is orthogonal to {u}")));
    }
    // Zero-defect arcs: runs of at least two grid points.
    for start in 0..n as isize {
        if !zero(start) || zero(start - 1) {
            continue;
        }
        let mut end = start;
        while zero(end + 1) {
            end += 1;
        }
        for k in start..=end {
            in_run[k.rem_euclid(n as isize) as usize] = true;
        }
        if end == start {
            in_run[start as usize] = false;
            continue;
        }
        let lo = bisect_edge(&defect, theta(start - 1), theta(start))?;
        let hi = bisect_edge(&defect, theta(end + 1), theta(end))?;
        found.push(lo);
        found.push(0.5 * (lo + hi));
        found.push(hi);
    }
    for k in 0..n as isize {
        if in_run[k as usize] {
            continue;
        }
        let c = at(k);
        if c >= COARSE_TOL || c > at(k - 1) || c > at(k + 1) {
            continue;
        }
        let th = refine_minimum(&defect, theta(k - 1), theta(k + 1))?;
        if defect(th)? <= ORTHO_TOL {
            found.push(th);
        }
    }
    Ok(found.into_iter().map(|th| unit_vector(norm, th)).collect())
}

/// Boundary of the zero-defect set between `outside` (positive defect) and
/// `inside` (zero defect); returns a point on the zero side.
fn bisect_edge(defect: &impl Fn(f64) -> Result<f64>, mut outside: f64, mut inside: f64) -> Result<f64> {
    for _ in 0..PLATEAU_BISECTIONS {
        let mid = 0.5 * (outside + inside);
        if defect(mid)? <= PLATEAU_TOL {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(inside)
}

/// Bisection on the sign of the defect slope, finishing with golden section
/// once the slope is lost in rounding.
fn refine_minimum(defect: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    while hi - lo > LINE_TOL {
        let mid = 0.5 * (lo + hi);
        let eps = (hi - lo) * 1e-3;
        let slope = defect(mid + eps)? - defect(mid - eps)?;
        if slope.abs() <= 4.0 * f64::EPSILON {
            break;
        }
        if slope > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut err = None;
    let r = golden_min(
        |th| match defect(th) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        },
        lo,
        hi,
        LINE_TOL,
    );
    match err {
        Some(e) => Err(e),
        None => Ok(r.x),
    }
}

/// Checks `u + v ⊥_B u − v` for an orthogonal unit pair, the implication that
/// holds in every inner product space.
pub fn baronti_check(norm: &NormHandle, u: Vector2, v: Vector2) -> Result<(bool, f64)> {
    let (ortho, d) = is_birkhoff(norm, u, v)?;
    if !ortho {
        return Err(Error::Argument(format!("{u} is not Birkhoff orthogonal to {v} (defect {d:e})")));
    }
    is_birkhoff(norm, u + v, u - v)
}

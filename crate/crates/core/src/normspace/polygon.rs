//! Polygonal norms: the gauge of a centrally symmetric convex polygon.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::vector::Vector2;

/// Relative tolerance for the structural polygon checks.
const SHAPE_TOL: f64 = 1e-9;

/// Relative tolerance under which a direction is snapped to a vertex ray.
const VERTEX_SNAP_TOL: f64 = 1e-10;

/// Where a direction meets the unit sphere of a polygonal norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereLocation {
    /// On the ray through vertex `k`.
    Vertex(usize),
    /// Strictly inside edge `k`, the edge from vertex `k` to vertex `k + 1`.
    Edge(usize),
}

/// A validated unit polygon with its edge support data.
///
/// Edge `e` joins `p_e` to `p_{e+1}`; its support line is `{x : a_e·x = 1}`
/// with `a_e = (Δy, −Δx) / (p_e ∧ p_{e+1})`. The gauge is `max_e a_e·x`; by
/// central symmetry `a_{e+n/2} = −a_e`, so only the first half is scanned
/// and `gauge(−x) = gauge(x)` holds bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonNorm {
    vertices: Vec<Vector2>,
    normals: Vec<Vector2>,
}

impl PolygonNorm {
    pub fn new(vertices: Vec<Vector2>) -> Result<Self> {
        validate_vertices(&vertices)?;
        let normals = support_normals(&vertices)?;
        Ok(PolygonNorm { vertices, normals })
    }

    pub fn regular(n: usize) -> Result<Self> {
        PolygonNorm::new(regular_vertices(n)?)
    }

    #[inline]
    pub fn gauge(&self, v: Vector2) -> f64 {
        let half = self.normals.len() / 2;
        let mut m = 0.0_f64;
        for a in &self.normals[..half] {
            m = m.max((a.x1 * v.x1 + a.x2 * v.x2).abs());
        }
        m
    }

    pub fn vertices(&self) -> &[Vector2] {
        &self.vertices
    }

    /// Scaled outward normals `a_e`; these are also the polar vertices.
    pub fn support_normals(&self) -> &[Vector2] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, k: usize) -> Vector2 {
        self.vertices[k % self.len()]
    }

    /// `(p⁻, p, p⁺)` around vertex `k`, in counterclockwise order.
    pub fn neighbors(&self, k: usize) -> (Vector2, Vector2, Vector2) {
        let n = self.len();
        (self.vertices[(k + n - 1) % n], self.vertices[k % n], self.vertices[(k + 1) % n])
    }

    /// Edge direction `p_{e+1} − p_e`.
    pub fn edge_direction(&self, e: usize) -> Vector2 {
        let n = self.len();
        self.vertices[(e + 1) % n] - self.vertices[e % n]
    }

    /// Locates the point where the ray through `v` leaves the polygon.
    pub fn locate(&self, v: Vector2) -> SphereLocation {
        let len_v = v.euclidean();
        for (k, p) in self.vertices.iter().enumerate() {
            if p.dot(v) > 0.0 && p.wedge(v).abs() <= VERTEX_SNAP_TOL * p.euclidean() * len_v {
                return SphereLocation::Vertex(k);
            }
        }
        let mut best = 0;
        let mut best_val = f64::NEG_INFINITY;
        for (e, a) in self.normals.iter().enumerate() {
            let s = a.dot(v);
            if s > best_val {
                best_val = s;
                best = e;
            }
        }
        SphereLocation::Edge(best)
    }
}

/// Vertices of the regular `n`-gon with a vertex at `(1, 0)`.
pub fn regular_vertices(n: usize) -> Result<Vec<Vector2>> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::Spec(format!("regular polygon needs an even vertex count >= 4, got {n}")));
    }
    let half = n / 2;
    let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    let first: Vec<Vector2> = (0..half)
        .map(|k| {
            let v = Vector2::from_angle(TAU * k as f64 / n as f64);
            Vector2::new(snap(v.x1), snap(v.x2))
        })
        .collect();
    let mut out = first.clone();
    out.extend(first.into_iter().map(|v| -v));
    Ok(out)
}

fn scale_of(vertices: &[Vector2]) -> f64 {
    vertices.iter().map(|v| v.euclidean()).fold(0.0, f64::max)
}

fn validate_vertices(vs: &[Vector2]) -> Result<()> {
    let n = vs.len();
    if n < 4 || n % 2 != 0 {
        return Err(Error::Spec(format!(
            "a centrally symmetric polygon needs an even number (>= 4) of vertices, got {n}"
        )));
    }
    if let Some(v) = vs.iter().find(|v| !v.is_finite()) {
        return Err(Error::Spec(format!("non-finite vertex {v}")));
    }
    let scale = scale_of(vs);
    if scale == 0.0 {
        return Err(Error::Spec("all vertices are at the origin".into()));
    }
    let tol = SHAPE_TOL * scale;
    let half = n / 2;
    for i in 0..half {
        let d = (vs[i] + vs[i + half]).euclidean();
        if d > tol {
            return Err(Error::Spec(format!(
                "polygon is not centrally symmetric: vertex {} = {} but vertex {} = {}",
                i,
                vs[i],
                i + half,
                vs[i + half]
            )));
        }
    }
    let mut turning = 0.0;
    for i in 0..n {
        let p = vs[i];
        let q = vs[(i + 1) % n];
        let r = vs[(i + 2) % n];
        if p.wedge(q) <= tol * scale {
            return Err(Error::Spec(format!(
                "origin is not strictly inside the polygon, or vertices {} and {} are not counterclockwise",
                i,
                (i + 1) % n
            )));
        }
        if (q - p).wedge(r - q) <= tol * scale {
            return Err(Error::Spec(format!(
                "polygon is not strictly convex at vertex {}",
                (i + 1) % n
            )));
        }
        turning += p.wedge(q).atan2(p.dot(q));
    }
    if (turning - TAU).abs() > 1e-6 {
        return Err(Error::Spec("vertex list winds around the origin more than once".into()));
    }
    Ok(())
}

fn support_normals(vs: &[Vector2]) -> Result<Vec<Vector2>> {
    let n = vs.len();
    (0..n)
        .map(|e| {
            let p = vs[e];
            let q = vs[(e + 1) % n];
            let det = p.wedge(q);
            if det.abs() <= f64::EPSILON * scale_of(vs).powi(2) {
                return Err(Error::Geometry(format!(
                    "support lines of edge {e} are parallel (p ∧ q = {det:e})"
                )));
            }
            let d = q - p;
            Ok(Vector2::new(d.x2 / det, -d.x1 / det))
        })
        .collect()
}

/// Vertices of the polar polygon: one per edge, solving `a·p_e = a·p_{e+1} = 1`.
///
/// The polar of a counterclockwise list is again counterclockwise; its first
/// vertex is dual to the edge `p_0 p_1`.
pub fn polar_polygon(vertices: &[Vector2]) -> Result<Vec<Vector2>> {
    if vertices.len() < 3 {
        return Err(Error::Geometry(format!("need at least 3 vertices, got {}", vertices.len())));
    }
    support_normals(vertices)
}

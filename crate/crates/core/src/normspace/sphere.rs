use std::f64::consts::TAU;

use crate::vector::Vector2;

use super::handle::NormHandle;

/// Angular distance under which a grid point is replaced by an exact vertex.
const MERGE_TOL: f64 = 1e-9;

/// The point of the unit sphere in direction `theta`.
#[inline]
pub fn unit_vector(handle: &NormHandle, theta: f64) -> Vector2 {
    handle.normalize(Vector2::from_angle(theta))
}

/// `n` unit vectors at equally spaced angles starting at 0, counterclockwise.
///
/// For polygonal norms the exact vertices are merged in, so the polyline
/// traces the polygon exactly; grid points that coincide with a vertex are
/// replaced by it.
pub fn sphere_polyline(handle: &NormHandle, n: usize) -> Vec<Vector2> {
    let mut pts: Vec<(f64, Vector2)> = (0..n)
        .map(|k| {
            let th = TAU * k as f64 / n as f64;
            (th, unit_vector(handle, th))
        })
        .collect();
    if let Some(poly) = handle.polygon() {
        let verts: Vec<(f64, Vector2)> = poly.vertices().iter().map(|&v| (v.angle(), v)).collect();
        pts.retain(|(th, _)| {
            verts.iter().all(|(a, _)| {
                let d = (th - a).rem_euclid(TAU);
                d.min(TAU - d) > MERGE_TOL
            })
        });
        pts.extend(verts);
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    pts.into_iter().map(|(_, v)| v).collect()
}

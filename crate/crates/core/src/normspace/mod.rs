//! Two-dimensional normed spaces: specs, evaluators, duals and sphere sampling.

mod dual;
mod handle;
mod polygon;
mod sphere;
mod spec;
mod validate;

pub use dual::{dual_eval, DUAL_GRID_N, DUAL_TOL};
pub use handle::{build_norm, NormHandle};
pub use polygon::{polar_polygon, regular_vertices, PolygonNorm, SphereLocation};
pub use sphere::{sphere_polyline, unit_vector};
pub use spec::{Exponent, NormSpec};
pub use validate::{validate_norm, ValidationReport, VALIDATION_TOL};

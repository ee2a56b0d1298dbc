//! Points of the real plane.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point (or direction) of the plane. Serialized as `[x1, x2]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vector2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vector2 {
    pub const ZERO: Vector2 = Vector2 { x1: 0.0, x2: 0.0 };

    #[inline]
    pub const fn new(x1: f64, x2: f64) -> Self {
        Vector2 { x1, x2 }
    }

    /// `(cos θ, sin θ)`.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vector2 { x1: c, x2: s }
    }

    #[inline]
    pub fn dot(self, other: Vector2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// `self ∧ other = x1·y2 − x2·y1`.
    #[inline]
    pub fn wedge(self, other: Vector2) -> f64 {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    /// Euclidean length; only used for geometric tolerances, never as the norm
    /// of the space under study.
    #[inline]
    pub fn euclidean(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = self.x2.atan2(self.x1);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0
    }

    /// Largest coordinate difference.
    pub fn max_abs_diff(self, other: Vector2) -> f64 {
        (self.x1 - other.x1).abs().max((self.x2 - other.x2).abs())
    }

    /// Rotation by +90°.
    #[inline]
    pub fn perp(self) -> Vector2 {
        Vector2::new(-self.x2, self.x1)
    }
}

/// Free-function form of [`Vector2::wedge`].
#[inline]
pub fn wedge(y: Vector2, z: Vector2) -> f64 {
    y.wedge(z)
}

impl Add for Vector2 {
    type Output = Vector2;
    #[inline]
    fn add(self, o: Vector2) -> Vector2 {
        Vector2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for Vector2 {
    type Output = Vector2;
    #[inline]
    fn sub(self, o: Vector2) -> Vector2 {
        Vector2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for Vector2 {
    type Output = Vector2;
    #[inline]
    fn neg(self) -> Vector2 {
        Vector2::new(-self.x1, -self.x2)
    }
}

impl Mul<Vector2> for f64 {
    type Output = Vector2;
    #[inline]
    fn mul(self, v: Vector2) -> Vector2 {
        Vector2::new(self * v.x1, self * v.x2)
    }
}

impl Mul<f64> for Vector2 {
    type Output = Vector2;
    #[inline]
    fn mul(self, c: f64) -> Vector2 {
        Vector2::new(c * self.x1, c * self.x2)
    }
}

impl From<[f64; 2]> for Vector2 {
    fn from(a: [f64; 2]) -> Self {
        Vector2::new(a[0], a[1])
    }
}

impl From<Vector2> for [f64; 2] {
    fn from(v: Vector2) -> Self {
        [v.x1, v.x2]
    }
}

impl fmt::Display for Vector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

//! Plane vectors and the 1-d/2-d point wrapper used throughout the solvers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point or direction in the plane, `x = (x1, x2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    #[inline]
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// Scalar cross product `x1*y2 - x2*y1`.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    #[inline]
    pub fn max_abs(self) -> f64 {
        self.x1.abs().max(self.x2.abs())
    }

    /// Rotates by +90 degrees.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.x2, self.x1)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    #[inline]
    pub fn to_array(self) -> [f64; 2] {
        [self.x1, self.x2]
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<(f64, f64)> for Vec2 {
    fn from((x1, x2): (f64, f64)) -> Self {
        Vec2::new(x1, x2)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x1, -self.x2)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x1 * s, self.x2 * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", Num(self.x1), Num(self.x2))
    }
}

/// Shortest round-trip decimal, switching to exponent form for tiny or huge magnitudes.
struct Num(f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.0.abs();
        if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{:e}", self.0)
        }
    }
}

impl Serialize for Vec2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 2]>::deserialize(d).map(Vec2::from)
    }
}

/// A point of the real line or of the plane.
///
/// Intervals act on [`Point::R1`]; every other set acts on [`Point::R2`].
/// Arithmetic between points of different dimension panics; callers check
/// dimensions once at the API boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    R1(f64),
    R2(Vec2),
}

impl Point {
    pub fn dim(&self) -> usize {
        match self {
            Point::R1(_) => 1,
            Point::R2(_) => 2,
        }
    }

    pub fn zero(dim: usize) -> Point {
        if dim == 1 {
            Point::R1(0.0)
        } else {
            Point::R2(Vec2::ZERO)
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Point::R1(x) => x.is_finite(),
            Point::R2(v) => v.is_finite(),
        }
    }

    pub fn as_vec2(&self) -> Option<Vec2> {
        match *self {
            Point::R2(v) => Some(v),
            Point::R1(_) => None,
        }
    }

    pub fn as_scalar(&self) -> Option<f64> {
        match *self {
            Point::R1(x) => Some(x),
            Point::R2(_) => None,
        }
    }

    /// Coordinates as a slice-like vector (length 1 or 2).
    pub fn coords(&self) -> Vec<f64> {
        match *self {
            Point::R1(x) => vec![x],
            Point::R2(v) => vec![v.x1, v.x2],
        }
    }

    pub fn from_coords(c: &[f64]) -> Result<Point> {
        match *c {
            [x] => Ok(Point::R1(x)),
            [x1, x2] => Ok(Point::R2(Vec2::new(x1, x2))),
            _ => Err(Error::Usage(format!(
                "a point needs 1 or 2 coordinates, got {}",
                c.len()
            ))),
        }
    }

    pub fn ensure_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                got: self.dim(),
            })
        }
    }

    pub fn dot(&self, other: &Point) -> f64 {
        match (*self, *other) {
            (Point::R1(a), Point::R1(b)) => a * b,
            (Point::R2(a), Point::R2(b)) => a.dot(b),
            _ => dim_panic(),
        }
    }

    pub fn norm(&self) -> f64 {
        match *self {
            Point::R1(x) => x.abs(),
            Point::R2(v) => v.norm(),
        }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (*self - *other).norm()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Point) -> f64 {
        match *self - *other {
            Point::R1(x) => x.abs(),
            Point::R2(v) => v.max_abs(),
        }
    }
}

#[cold]
fn dim_panic() -> ! {
    panic!("arithmetic between points of different dimension")
}

impl From<Vec2> for Point {
    fn from(v: Vec2) -> Self {
        Point::R2(v)
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::R1(x)
    }
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::R2(a.into())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        match (self, rhs) {
            (Point::R1(a), Point::R1(b)) => Point::R1(a + b),
            (Point::R2(a), Point::R2(b)) => Point::R2(a + b),
            _ => dim_panic(),
        }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        match (self, rhs) {
            (Point::R1(a), Point::R1(b)) => Point::R1(a - b),
            (Point::R2(a), Point::R2(b)) => Point::R2(a - b),
            _ => dim_panic(),
        }
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        match self {
            Point::R1(a) => Point::R1(a * s),
            Point::R2(a) => Point::R2(a * s),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::R1(x) => Num(*x).fmt(f),
            Point::R2(v) => v.fmt(f),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = Vec::<f64>::deserialize(d)?;
        Point::from_coords(&c).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_and_perp_agree() {
        let a = Vec2::new(0.6, 0.8);
        let b = Vec2::new(-2.0, 3.0);
        assert_eq!(a.cross(b), a.perp().dot(b));
    }

    #[test]
    fn point_json_is_a_plain_array() {
        let p = Point::from([0.5, -0.5]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[0.5,-0.5]");
        let q: Point = serde_json::from_str("[-1.0]").unwrap();
        assert_eq!(q, Point::R1(-1.0));
        assert!(serde_json::from_str::<Point>("[1,2,3]").is_err());
    }

    #[test]
    #[should_panic]
    fn mixed_dimension_arithmetic_panics() {
        let _ = Point::R1(1.0) + Point::from([1.0, 2.0]);
    }
}

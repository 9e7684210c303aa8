//! Closed convex sets: projections, membership and normal cones.
//!
//! Every variant of [`SetDescriptor`] has a closed-form projection. Clamp-based
//! variants (box, orthant, interval) return the stored bound value itself when
//! a bound is active, so equality against a vertex such as `(-1, 1)` is exact.

mod json;
pub mod nearest;
mod point;

pub use nearest::{nearest_point_oracle, nearest_point_oracle_in, OracleWindow};
pub use point::{Point, Vec2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for the scalar tests in [`SetDescriptor::normal_cone_contains`].
pub const NORMAL_CONE_TOL: f64 = 1e-10;

/// Smallest accepted length of a line normal.
pub const MIN_NORMAL_NORM: f64 = 1e-12;

/// A closed convex set with a closed-form projection.
///
/// Build values through the constructors, which validate and (for lines)
/// normalize. Hand-built variants can be checked with [`SetDescriptor::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "json::RawSet", into = "json::RawSet")]
pub enum SetDescriptor {
    /// Axis-aligned box `[lo.x1, hi.x1] x [lo.x2, hi.x2]`; bounds may be infinite.
    Box { lo: Vec2, hi: Vec2 },
    /// Line `u + {v}^perp` with unit normal `v`.
    Line { u: Vec2, v: Vec2 },
    /// Halfspace `<normal, x> <= offset`.
    Halfspace { normal: Vec2, offset: f64 },
    /// Closed disc.
    Ball { center: Vec2, radius: f64 },
    /// The nonnegative orthant.
    Orthant,
    /// Closed interval of the real line; either end may be infinite.
    Interval { lo: f64, hi: f64 },
}

impl SetDescriptor {
    /// The square `[-1, 1] x [-1, 1]`.
    pub fn square() -> Self {
        SetDescriptor::Box {
            lo: Vec2::new(-1.0, -1.0),
            hi: Vec2::new(1.0, 1.0),
        }
    }

    pub fn boxed(lo: Vec2, hi: Vec2) -> Result<Self> {
        let s = SetDescriptor::Box { lo, hi };
        s.validate()?;
        Ok(s)
    }

    /// Line through `u` with normal direction `v` (normalized here).
    pub fn line(u: Vec2, v: Vec2) -> Result<Self> {
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::NonFinite("line"));
        }
        let len = v.norm();
        if len < MIN_NORMAL_NORM {
            return Err(Error::InvalidSet("line normal is (nearly) zero".into()));
        }
        Ok(SetDescriptor::Line { u, v: v * (1.0 / len) })
    }

    /// Line through two distinct points.
    pub fn line_through(p: Vec2, q: Vec2) -> Result<Self> {
        Self::line(p, (q - p).perp())
    }

    pub fn halfspace(normal: Vec2, offset: f64) -> Result<Self> {
        let s = SetDescriptor::Halfspace { normal, offset };
        s.validate()?;
        Ok(s)
    }

    pub fn ball(center: Vec2, radius: f64) -> Result<Self> {
        let s = SetDescriptor::Ball { center, radius };
        s.validate()?;
        Ok(s)
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        let s = SetDescriptor::Interval { lo, hi };
        s.validate()?;
        Ok(s)
    }

    /// Checks the variant invariants: finite data, ordered bounds, unit line
    /// normal, positive radius, nonzero halfspace normal.
    pub fn validate(&self) -> Result<()> {
        match *self {
            SetDescriptor::Box { lo, hi } => {
                for (l, h) in [(lo.x1, hi.x1), (lo.x2, hi.x2)] {
                    check_bounds(l, h)?;
                }
            }
            SetDescriptor::Line { u, v } => {
                if !u.is_finite() || !v.is_finite() {
                    return Err(Error::NonFinite("line"));
                }
                if (v.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidSet(format!(
                        "line normal must be a unit vector, |v| = {}",
                        v.norm()
                    )));
                }
            }
            SetDescriptor::Halfspace { normal, offset } => {
                if !normal.is_finite() || !offset.is_finite() {
                    return Err(Error::NonFinite("halfspace"));
                }
                if normal.norm() == 0.0 {
                    return Err(Error::InvalidSet("halfspace normal is zero".into()));
                }
            }
            SetDescriptor::Ball { center, radius } => {
                if !center.is_finite() || !radius.is_finite() {
                    return Err(Error::NonFinite("ball"));
                }
                if radius <= 0.0 {
                    return Err(Error::InvalidSet(format!(
                        "ball radius must be positive, got {radius}"
                    )));
                }
            }
            SetDescriptor::Orthant => {}
            SetDescriptor::Interval { lo, hi } => check_bounds(lo, hi)?,
        }
        Ok(())
    }

    /// Dimension of the ambient space (1 for intervals, 2 otherwise).
    pub fn dim(&self) -> usize {
        match self {
            SetDescriptor::Interval { .. } => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SetDescriptor::Box { .. } => "box",
            SetDescriptor::Line { .. } => "line",
            SetDescriptor::Halfspace { .. } => "halfspace",
            SetDescriptor::Ball { .. } => "ball",
            SetDescriptor::Orthant => "orthant",
            SetDescriptor::Interval { .. } => "interval",
        }
    }

    /// True for affine sets: lines, and boxes/intervals whose every
    /// coordinate is either unbounded on both sides or pinned to one value.
    pub fn is_affine(&self) -> bool {
        let affine_range = |lo: f64, hi: f64| {
            lo == hi || (lo == f64::NEG_INFINITY && hi == f64::INFINITY)
        };
        match *self {
            SetDescriptor::Line { .. } => true,
            SetDescriptor::Box { lo, hi } => {
                affine_range(lo.x1, hi.x1) && affine_range(lo.x2, hi.x2)
            }
            SetDescriptor::Interval { lo, hi } => affine_range(lo, hi),
            _ => false,
        }
    }

    /// True when the projection is a coordinatewise clamp.
    pub fn is_clamp_based(&self) -> bool {
        matches!(
            self,
            SetDescriptor::Box { .. } | SetDescriptor::Orthant | SetDescriptor::Interval { .. }
        )
    }

    fn check_point(&self, x: &Point, what: &'static str) -> Result<()> {
        x.ensure_dim(self.dim())?;
        if !x.is_finite() {
            return Err(Error::NonFinite(what));
        }
        Ok(())
    }

    /// Nearest point of the set to `x`.
    pub fn project(&self, x: &Point) -> Result<Point> {
        self.check_point(x, "point")?;
        Ok(match (*self, *x) {
            (SetDescriptor::Interval { lo, hi }, Point::R1(t)) => Point::R1(clamp(t, lo, hi)),
            (_, Point::R2(p)) => Point::R2(self.project_vec2(p)),
            _ => unreachable!("dimension checked above"),
        })
    }

    /// Projection of a plane point. Panics on intervals.
    pub fn project_vec2(&self, x: Vec2) -> Vec2 {
        match *self {
            SetDescriptor::Box { lo, hi } => {
                Vec2::new(clamp(x.x1, lo.x1, hi.x1), clamp(x.x2, lo.x2, hi.x2))
            }
            SetDescriptor::Line { u, v } => {
                // Dividing by <v,v> keeps exact results exact for rational data.
                let t = (x - u).dot(v) / v.dot(v);
                x - v * t
            }
            SetDescriptor::Halfspace { normal, offset } => project_halfspace(x, normal, offset),
            SetDescriptor::Ball { center, radius } => project_ball(x, center, radius),
            SetDescriptor::Orthant => Vec2::new(x.x1.max(0.0), x.x2.max(0.0)),
            SetDescriptor::Interval { .. } => panic!("interval is a 1-d set"),
        }
    }

    /// Euclidean distance from `x` to the set.
    pub fn distance(&self, x: &Point) -> Result<f64> {
        self.check_point(x, "point")?;
        Ok(match (*self, *x) {
            (SetDescriptor::Line { u, v }, Point::R2(p)) => (p - u).dot(v).abs() / v.norm(),
            (SetDescriptor::Halfspace { normal, offset }, Point::R2(p)) => {
                ((normal.dot(p) - offset) / normal.norm()).max(0.0)
            }
            (SetDescriptor::Ball { center, radius }, Point::R2(p)) => {
                ((p - center).norm() - radius).max(0.0)
            }
            _ => {
                let proj = self.project(x)?;
                x.dist(&proj)
            }
        })
    }

    /// `distance(x) <= tol`; with `tol = 0` this is exact membership for
    /// every variant except lines.
    pub fn contains(&self, x: &Point, tol: f64) -> Result<bool> {
        check_tol(tol)?;
        Ok(self.distance(x)? <= tol)
    }

    /// Whether `dir` lies in the normal cone of the set at `point`, each
    /// scalar test relaxed by `tol`.
    pub fn normal_cone_contains(&self, point: &Point, dir: &Point, tol: f64) -> Result<bool> {
        check_tol(tol)?;
        self.check_point(dir, "direction")?;
        if !self.contains(point, tol)? {
            return Err(Error::PointNotInSet);
        }
        Ok(match (*self, *point, *dir) {
            (SetDescriptor::Interval { lo, hi }, Point::R1(p), Point::R1(d)) => {
                coordinate_cone(p, d, lo, hi, tol)
            }
            (SetDescriptor::Box { lo, hi }, Point::R2(p), Point::R2(d)) => {
                coordinate_cone(p.x1, d.x1, lo.x1, hi.x1, tol)
                    && coordinate_cone(p.x2, d.x2, lo.x2, hi.x2, tol)
            }
            (SetDescriptor::Orthant, Point::R2(p), Point::R2(d)) => {
                coordinate_cone(p.x1, d.x1, 0.0, f64::INFINITY, tol)
                    && coordinate_cone(p.x2, d.x2, 0.0, f64::INFINITY, tol)
            }
            (SetDescriptor::Line { v, .. }, _, Point::R2(d)) => {
                // (A - A)^perp = span{v}
                (d.cross(v) / v.norm()).abs() <= tol
            }
            (SetDescriptor::Halfspace { normal, offset }, Point::R2(p), Point::R2(d)) => {
                let len = normal.norm();
                let slack = (offset - normal.dot(p)) / len;
                if slack <= tol {
                    ray_cone(d, normal * (1.0 / len), tol)
                } else {
                    d.max_abs() <= tol
                }
            }
            (SetDescriptor::Ball { center, radius }, Point::R2(p), Point::R2(d)) => {
                let r = p - center;
                let len = r.norm();
                if radius - len <= tol && len > 0.0 {
                    ray_cone(d, r * (1.0 / len), tol)
                } else {
                    d.max_abs() <= tol
                }
            }
            _ => unreachable!("dimension checked above"),
        })
    }
}

fn check_bounds(lo: f64, hi: f64) -> Result<()> {
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::NonFinite("bounds"));
    }
    if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
        return Err(Error::InvalidSet(format!("empty range [{lo}, {hi}]")));
    }
    if lo > hi {
        return Err(Error::InvalidSet(format!("lower bound {lo} exceeds upper bound {hi}")));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("tolerance must be finite and >= 0, got {tol}")))
    }
}

/// Clamp returning the bound itself when active.
#[inline]
fn clamp(x: f64, lo: f64, hi: f64) -> f64 {
    if x < lo {
        lo
    } else if x > hi {
        hi
    } else {
        x
    }
}

fn project_halfspace(x: Vec2, normal: Vec2, offset: f64) -> Vec2 {
    let excess = normal.dot(x) - offset;
    if excess <= 0.0 {
        return x;
    }
    let mut shift = excess / normal.dot(normal);
    let mut p = x - normal * shift;
    // Rounding can leave p a few ulps outside; nudge it back in.
    let mut k = 0;
    while normal.dot(p) > offset && k < 64 {
        shift *= 1.0 + f64::EPSILON * f64::from(1u32 << k.min(30));
        p = x - normal * shift;
        k += 1;
    }
    p
}

fn project_ball(x: Vec2, center: Vec2, radius: f64) -> Vec2 {
    let d = x - center;
    let len = d.norm();
    if len <= radius {
        return x;
    }
    let mut scale = radius / len;
    let mut p = center + d * scale;
    let mut k = 0;
    while (p - center).norm() > radius && k < 64 {
        scale *= 1.0 - f64::EPSILON * f64::from(1u32 << k.min(30));
        p = center + d * scale;
        k += 1;
    }
    p
}

/// Normal cone of `[lo, hi]` at `p`, one coordinate.
fn coordinate_cone(p: f64, d: f64, lo: f64, hi: f64, tol: f64) -> bool {
    let at_lo = p - lo <= tol;
    let at_hi = hi - p <= tol;
    match (at_lo, at_hi) {
        (true, true) => true,
        (true, false) => d <= tol,
        (false, true) => d >= -tol,
        (false, false) => d.abs() <= tol,
    }
}

/// `d` is a nonnegative multiple of the unit vector `n`.
fn ray_cone(d: Vec2, n: Vec2, tol: f64) -> bool {
    d.cross(n).abs() <= tol && d.dot(n) >= -tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(x1: f64, x2: f64) -> Point {
        Point::from([x1, x2])
    }

    fn diag_line() -> SetDescriptor {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        SetDescriptor::line(Vec2::new(0.0, 1.0), Vec2::new(s, s)).unwrap()
    }

    #[test]
    fn line_projection_lands_on_half_half() {
        let p = diag_line().project(&p2(-1.0, -1.0)).unwrap();
        assert_eq!(p, p2(0.5, 0.5));
    }

    #[test]
    fn square_projection_clamps_to_vertex() {
        let p = SetDescriptor::square().project(&p2(-2.0, -1.0)).unwrap();
        assert_eq!(p, p2(-1.0, -1.0));
    }

    #[test]
    fn projection_fixes_members() {
        let sets = [
            SetDescriptor::square(),
            diag_line(),
            SetDescriptor::halfspace(Vec2::new(1.0, 1.0), 0.0).unwrap(),
            SetDescriptor::ball(Vec2::new(1.0, 2.0), 3.0).unwrap(),
            SetDescriptor::Orthant,
        ];
        let inside = [p2(0.3, -1.0), p2(0.25, 0.75), p2(-3.0, 1.0), p2(2.0, 2.0), p2(0.0, 4.0)];
        for (s, x) in sets.iter().zip(inside) {
            assert_eq!(s.project(&x).unwrap(), x, "{s:?}");
        }
        let i = SetDescriptor::interval(0.0, f64::INFINITY).unwrap();
        assert_eq!(i.project(&Point::R1(7.5)).unwrap(), Point::R1(7.5));
    }

    #[test]
    fn orthant_clamps_negatives() {
        assert_eq!(SetDescriptor::Orthant.project(&p2(2.0, -1.0)).unwrap(), p2(2.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_a_usage_error() {
        let err = SetDescriptor::square().project(&Point::R1(0.0)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, got: 1 });
        let i = SetDescriptor::interval(0.0, 1.0).unwrap();
        assert!(i.contains(&p2(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn non_finite_input_rejected() {
        let err = SetDescriptor::square().project(&p2(f64::NAN, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NonFinite(_)));
    }

    #[test]
    fn contains_examples() {
        assert!(SetDescriptor::square().contains(&p2(1.0, 1.0), 0.0).unwrap());
        assert!(diag_line().contains(&p2(0.5, 0.5), 1e-12).unwrap());
        let h = SetDescriptor::halfspace(Vec2::new(1.0, 1.0), 0.0).unwrap();
        assert!(!h.contains(&p2(1.0, 0.0), 0.0).unwrap());
    }

    #[test]
    fn normal_cone_examples() {
        let sq = SetDescriptor::square();
        assert!(sq.normal_cone_contains(&p2(-1.0, 1.0), &p2(-3.0, 0.5), 1e-10).unwrap());
        assert!(!sq.normal_cone_contains(&p2(-1.0, 1.0), &p2(3.0, 0.5), 1e-10).unwrap());
        assert!(sq.normal_cone_contains(&p2(0.2, 0.1), &p2(0.0, 0.0), 0.0).unwrap());
        assert!(SetDescriptor::Orthant
            .normal_cone_contains(&p2(1.0, 0.0), &p2(0.0, -1.0), 1e-10)
            .unwrap());
        assert!(!SetDescriptor::Orthant
            .normal_cone_contains(&p2(1.0, 0.0), &p2(-1.0, -1.0), 1e-10)
            .unwrap());
    }

    #[test]
    fn normal_cone_requires_membership() {
        let err = SetDescriptor::square()
            .normal_cone_contains(&p2(3.0, 0.0), &p2(1.0, 0.0), 1e-10)
            .unwrap_err();
        assert_eq!(err, Error::PointNotInSet);
    }

    #[test]
    fn line_constructor_normalizes_and_rejects_zero() {
        let l = SetDescriptor::line(Vec2::new(0.0, 1.0), Vec2::new(3.0, 4.0)).unwrap();
        match l {
            SetDescriptor::Line { v, .. } => assert!((v.norm() - 1.0).abs() <= 1e-12),
            _ => unreachable!(),
        }
        assert!(SetDescriptor::line(Vec2::ZERO, Vec2::new(1e-13, 0.0)).is_err());
    }

    #[test]
    fn invalid_descriptors_rejected() {
        assert!(SetDescriptor::boxed(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).is_err());
        assert!(SetDescriptor::ball(Vec2::ZERO, 0.0).is_err());
        assert!(SetDescriptor::interval(2.0, 1.0).is_err());
        assert!(SetDescriptor::halfspace(Vec2::ZERO, 1.0).is_err());
        assert!(SetDescriptor::interval(f64::INFINITY, f64::INFINITY).is_err());
    }

    #[test]
    fn unbounded_interval_clamp_is_noop_on_open_side() {
        let i = SetDescriptor::interval(f64::NEG_INFINITY, 1.0).unwrap();
        assert_eq!(i.project(&Point::R1(-1e300)).unwrap(), Point::R1(-1e300));
        assert_eq!(i.project(&Point::R1(5.0)).unwrap(), Point::R1(1.0));
    }

    #[test]
    fn affineness() {
        assert!(diag_line().is_affine());
        assert!(!SetDescriptor::square().is_affine());
        let strip = SetDescriptor::boxed(
            Vec2::new(f64::NEG_INFINITY, 0.5),
            Vec2::new(f64::INFINITY, 0.5),
        )
        .unwrap();
        assert!(strip.is_affine());
        assert!(!SetDescriptor::Orthant.is_affine());
    }

    #[test]
    fn halfspace_and_ball_projections_are_exact_members() {
        let h = SetDescriptor::halfspace(Vec2::new(0.3, 0.7), 0.1).unwrap();
        let b = SetDescriptor::ball(Vec2::new(0.1, -0.2), 0.7).unwrap();
        for k in 0..200 {
            let t = f64::from(k) * 0.37;
            let x = p2(5.0 * t.cos() + 0.01 * t, 3.0 * t.sin());
            assert!(h.contains(&h.project(&x).unwrap(), 0.0).unwrap());
            assert!(b.contains(&b.project(&x).unwrap(), 0.0).unwrap());
        }
    }
}

//! Search-based nearest point of `A ∩ B`.
//!
//! An independent reference for the iterative solvers: it only evaluates
//! constraint violations, so it shares no code path with Dykstra or MAP.
//! Strategy:
//!
//! * 1-d intervals, or a line against any set: parametrize the line, find a
//!   feasible parameter by grid search, bisect both ends of the feasible
//!   interval, then clamp the unconstrained optimum into it.
//! * two full-dimensional sets: grid search the window for a feasible point,
//!   then minimize the entry distance along rays from `z` over the ray angle
//!   (golden section), each entry located by bisection.
//!
//! The returned point is always the feasible end of a bisection bracket.

use std::f64::consts::PI;

use super::{Point, SetDescriptor, Vec2};
use crate::error::{Error, Result};

/// Lines count as satisfied within this distance.
const LINE_SLACK: f64 = 1e-12;

/// Search window and resolution for [`nearest_point_oracle_in`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleWindow {
    /// Half-width of the axis-aligned window centered at `z`.
    pub half_width: f64,
    /// Grid points per axis for the coarse search.
    pub grid: usize,
    pub bisection_steps: usize,
}

impl OracleWindow {
    /// Half-width `8 (1 + |z|)`, 65 grid points per axis, 60 bisection steps.
    pub fn around(z: &Point) -> Self {
        Self {
            half_width: 8.0 * (1.0 + z.norm()),
            grid: 65,
            bisection_steps: 60,
        }
    }
}

/// Nearest point of `A ∩ B` to `z` with the default window.
pub fn nearest_point_oracle(a: &SetDescriptor, b: &SetDescriptor, z: &Point) -> Result<Point> {
    nearest_point_oracle_in(a, b, z, &OracleWindow::around(z))
}

pub fn nearest_point_oracle_in(
    a: &SetDescriptor,
    b: &SetDescriptor,
    z: &Point,
    window: &OracleWindow,
) -> Result<Point> {
    a.validate()?;
    b.validate()?;
    z.ensure_dim(a.dim())?;
    z.ensure_dim(b.dim())?;
    if !z.is_finite() {
        return Err(Error::NonFinite("z"));
    }
    if window.grid < 2 || !(window.half_width > 0.0) {
        return Err(Error::Usage("oracle window needs grid >= 2 and half_width > 0".into()));
    }

    match *z {
        Point::R1(t) => {
            let g = |s: f64| violation_1d(a, s).max(violation_1d(b, s));
            let (lo, hi) = feasible_interval(g, t, window)?;
            Ok(Point::R1(clamp(t, lo, hi)))
        }
        Point::R2(zv) => {
            let x = match (as_line(a), as_line(b)) {
                (Some(la), Some(lb)) => line_line(la, lb, zv)?,
                (Some(line), None) => along_line(line, b, zv, window)?,
                (None, Some(line)) => along_line(line, a, zv, window)?,
                (None, None) => full_dimensional(a, b, zv, window)?,
            };
            Ok(Point::R2(x))
        }
    }
}

/// Convex constraint function: `<= 0` exactly on the set (lines: distance).
fn violation(s: &SetDescriptor, x: Vec2) -> f64 {
    match *s {
        SetDescriptor::Box { lo, hi } => (lo.x1 - x.x1)
            .max(x.x1 - hi.x1)
            .max(lo.x2 - x.x2)
            .max(x.x2 - hi.x2),
        SetDescriptor::Line { u, v } => (x - u).dot(v).abs() / v.norm(),
        SetDescriptor::Halfspace { normal, offset } => (normal.dot(x) - offset) / normal.norm(),
        SetDescriptor::Ball { center, radius } => (x - center).norm() - radius,
        SetDescriptor::Orthant => (-x.x1).max(-x.x2),
        SetDescriptor::Interval { .. } => f64::INFINITY,
    }
}

fn violation_1d(s: &SetDescriptor, t: f64) -> f64 {
    match *s {
        SetDescriptor::Interval { lo, hi } => (lo - t).max(t - hi),
        _ => f64::INFINITY,
    }
}

/// Point on the line and unit direction along it.
fn as_line(s: &SetDescriptor) -> Option<(Vec2, Vec2)> {
    match *s {
        SetDescriptor::Line { u, v } => Some((u, v.perp() * (1.0 / v.norm()))),
        SetDescriptor::Box { lo, hi } if s.is_affine() => {
            // pinned coordinate(s) with the rest unbounded
            match (lo.x1 == hi.x1, lo.x2 == hi.x2) {
                (true, false) => Some((Vec2::new(lo.x1, 0.0), Vec2::new(0.0, 1.0))),
                (false, true) => Some((Vec2::new(0.0, lo.x2), Vec2::new(1.0, 0.0))),
                _ => None,
            }
        }
        _ => None,
    }
}

fn clamp(x: f64, lo: f64, hi: f64) -> f64 {
    x.max(lo).min(hi)
}

/// Feasible interval of a convex 1-d constraint `g` inside
/// `[center - half_width, center + half_width]`.
fn feasible_interval(
    g: impl Fn(f64) -> f64,
    center: f64,
    window: &OracleWindow,
) -> Result<(f64, f64)> {
    let lo = center - window.half_width;
    let hi = center + window.half_width;
    let n = window.grid.max(2) * 16;
    let step = (hi - lo) / (n as f64);

    let mut feasible = (0..=n)
        .map(|i| lo + step * (i as f64))
        .filter(|&t| g(t) <= 0.0)
        .min_by(|s, t| (s - center).abs().total_cmp(&(t - center).abs()));

    if feasible.is_none() {
        // Narrow or single-point intersections slip between grid nodes.
        let t = ternary_min(&g, lo, hi, 200);
        let gt = g(t);
        if gt <= 0.0 {
            feasible = Some(t);
        } else if gt <= LINE_SLACK {
            return Ok((t, t));
        }
    }
    let t0 = feasible.ok_or_else(|| {
        Error::Infeasible(format!(
            "no feasible point within {} of the start",
            window.half_width
        ))
    })?;

    let left = if g(lo) <= 0.0 {
        lo
    } else {
        bisect_entry(&g, lo, t0, window.bisection_steps)
    };
    let right = if g(hi) <= 0.0 {
        hi
    } else {
        bisect_entry(&g, hi, t0, window.bisection_steps)
    };
    Ok((left, right))
}

/// Bisection between an infeasible `outside` and a feasible `inside`
/// parameter; returns the feasible end of the final bracket.
fn bisect_entry(g: impl Fn(f64) -> f64, outside: f64, inside: f64, steps: usize) -> f64 {
    let (mut out, mut inn) = (outside, inside);
    for _ in 0..steps {
        let mid = 0.5 * (out + inn);
        if mid == out || mid == inn {
            break;
        }
        if g(mid) <= 0.0 {
            inn = mid;
        } else {
            out = mid;
        }
    }
    inn
}

fn ternary_min(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    for _ in 0..iters {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) <= g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

fn along_line(
    (u, dir): (Vec2, Vec2),
    other: &SetDescriptor,
    z: Vec2,
    window: &OracleWindow,
) -> Result<Vec2> {
    // Parametrize by signed distance from the foot of z on the line.
    let foot = u + dir * (z - u).dot(dir);
    let g = |t: f64| violation(other, foot + dir * t);
    let (lo, hi) = feasible_interval(g, 0.0, window)?;
    Ok(foot + dir * clamp(0.0, lo, hi))
}

fn line_line((u1, d1): (Vec2, Vec2), (u2, d2): (Vec2, Vec2), z: Vec2) -> Result<Vec2> {
    let det = d1.cross(d2);
    if det.abs() <= 1e-14 {
        // parallel: either the same line or disjoint
        if (u2 - u1).cross(d1).abs() <= LINE_SLACK {
            return Ok(u1 + d1 * (z - u1).dot(d1));
        }
        return Err(Error::Infeasible("parallel lines do not meet".into()));
    }
    let t = (u2 - u1).cross(d2) / det;
    Ok(u1 + d1 * t)
}

fn full_dimensional(
    a: &SetDescriptor,
    b: &SetDescriptor,
    z: Vec2,
    window: &OracleWindow,
) -> Result<Vec2> {
    let g = |x: Vec2| violation(a, x).max(violation(b, x));
    if g(z) <= 0.0 {
        return Ok(z);
    }
    let w = window.half_width;
    let steps = window.bisection_steps;

    // Entry distance along the ray at angle `theta`, with the entry point.
    let entry = |theta: f64| -> Option<(f64, Vec2)> {
        let d = Vec2::new(theta.cos(), theta.sin());
        let reach = w / d.max_abs();
        let along = |t: f64| g(z + d * t);
        let t_min = ternary_min(along, 0.0, reach, 120);
        if along(t_min) > 0.0 {
            return None;
        }
        let t = bisect_entry(along, 0.0, t_min, steps);
        Some((t, z + d * t))
    };

    // Coarse grid for any feasible point; the one nearest z seeds the angle.
    let n = window.grid;
    let h = 2.0 * w / ((n - 1) as f64);
    let mut seed: Option<Vec2> = None;
    for i in 0..n {
        for j in 0..n {
            let x = Vec2::new(z.x1 - w + h * (i as f64), z.x2 - w + h * (j as f64));
            if g(x) <= 0.0 && seed.is_none_or(|s| (x - z).norm() < (s - z).norm()) {
                seed = Some(x);
            }
        }
    }
    let toward_seed = seed.map(|s| {
        let d = s - z;
        d.x2.atan2(d.x1)
    });
    let seed_angle = match toward_seed.filter(|&th| entry(th).is_some()) {
        Some(th) => th,
        None => {
            // Thin intersections, or a seed only grazed by its ray: scan directions.
            let m = 8 * n;
            (0..m)
                .map(|k| 2.0 * PI * (k as f64) / (m as f64))
                .find(|&th| entry(th).is_some())
                .ok_or_else(|| {
                    Error::Infeasible(format!("no feasible point within window of half-width {w}"))
                })?
        }
    };

    // Entry distance is quasiconvex in the angle and infinite on the far
    // side, so a bracketing golden-section search over the full turn works.
    let cost = |theta: f64| entry(theta).map_or(f64::INFINITY, |(t, _)| t);
    let (mut lo, mut mid, mut hi) = (seed_angle - PI, seed_angle, seed_angle + PI);
    let mut f_mid = cost(mid);
    if !f_mid.is_finite() {
        return Err(Error::Infeasible("seed direction lost feasibility".into()));
    }
    const INV_PHI2: f64 = 0.381_966_011_250_105_1;
    while hi - lo > 1e-13 {
        let probe = if mid - lo > hi - mid {
            mid - INV_PHI2 * (mid - lo)
        } else {
            mid + INV_PHI2 * (hi - mid)
        };
        if probe == mid {
            break;
        }
        let f_probe = cost(probe);
        if f_probe < f_mid {
            if probe < mid {
                hi = mid;
            } else {
                lo = mid;
            }
            mid = probe;
            f_mid = f_probe;
        } else if probe < mid {
            lo = probe;
        } else {
            hi = probe;
        }
    }

    let (_, best) = entry(mid).expect("finite cost implies a feasible entry");
    match seed {
        Some(s) if (s - z).norm() < (best - z).norm() => Ok(s),
        _ => Ok(best),
    }
}

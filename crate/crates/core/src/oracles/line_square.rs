//! Closed-form behaviour of Dykstra's algorithm for a line against `[-1,1]^2`.
//!
//! Canonical pose: `A = u + {v}^perp` with `v` in the open positive quadrant,
//! `u = (u1, 1)` on the top edge and `-1 < u1 <= 1`. Outside the square the
//! line rises to the upper left of `u`.

use std::fmt;

use serde::Serialize;

use super::symmetry::{normalize_symmetry, Normalized, Transform};
use crate::error::{Error, Result};
use crate::sets::{SetDescriptor, Vec2};

/// The vertex where stalling runs sit.
pub const STALL_VERTEX: Vec2 = Vec2 { x1: -1.0, x2: 1.0 };

/// A canonical line-versus-square instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineSquareProblem {
    pub u: Vec2,
    pub v: Vec2,
    pub z: Vec2,
}

fn check_canonical(u: Vec2, v: Vec2) -> Result<()> {
    if !u.is_finite() || !v.is_finite() {
        return Err(Error::NonFinite("line data"));
    }
    if (v.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!("|v| = {} is not 1", v.norm())));
    }
    if !(v.x1 > 0.0 && v.x2 > 0.0) {
        return Err(Error::Precondition(format!("v = {v} is not in the open positive quadrant")));
    }
    if u.x2 != 1.0 || !(u.x1 > -1.0 && u.x1 <= 1.0) {
        return Err(Error::Precondition(format!(
            "u = {u} must satisfy u2 = 1 and -1 < u1 <= 1"
        )));
    }
    Ok(())
}

impl LineSquareProblem {
    pub fn new(u: Vec2, v: Vec2, z: Vec2) -> Result<Self> {
        check_canonical(u, v)?;
        if !z.is_finite() {
            return Err(Error::NonFinite("z"));
        }
        Ok(Self { u, v, z })
    }

    /// The line `A` as a set descriptor.
    pub fn line(&self) -> SetDescriptor {
        SetDescriptor::Line {
            u: self.u,
            v: self.v,
        }
    }

    /// `a_1 = P_A z`.
    pub fn a1(&self) -> Vec2 {
        self.line().project_vec2(self.z)
    }
}

/// Which closed-form regime a start point falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum RegionClass {
    /// `a_1` already lies in the square: the solution is `a_1`.
    RapidFinite,
    /// Axis-parallel line: the solution is `P_B P_A z`.
    ParallelFinite,
    /// `a_1` above the top edge, right of `x1 = -1`: Dykstra and MAP agree.
    MapCoincident,
    /// `a_1` above and left of the vertex `(-1, 1)`: `b_n` sits at the
    /// vertex for `predicted_stall` steps.
    Stalling { predicted_stall: u64 },
    /// None of the analysed hypotheses apply.
    OutOfScopeOrientation,
}

impl RegionClass {
    pub fn name(&self) -> &'static str {
        match self {
            RegionClass::RapidFinite => "RapidFinite",
            RegionClass::ParallelFinite => "ParallelFinite",
            RegionClass::MapCoincident => "MapCoincident",
            RegionClass::Stalling { .. } => "Stalling",
            RegionClass::OutOfScopeOrientation => "OutOfScopeOrientation",
        }
    }
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionClass::Stalling { predicted_stall } => write!(f, "Stalling, n={predicted_stall}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Classifies a canonical problem by `a_1 = P_A z`. Hypotheses are tried in
/// the order rapid, coincident, stalling; `a_1(1) = u1` counts as rapid.
pub fn classify_region(problem: &LineSquareProblem) -> RegionClass {
    let a1 = problem.a1();
    let u1 = problem.u.x1;
    if u1 <= a1.x1 && a1.x1 <= 1.0 && a1.x2.abs() <= 1.0 {
        RegionClass::RapidFinite
    } else if -1.0 < a1.x1 && a1.x1 < u1 && a1.x2 > 1.0 {
        RegionClass::MapCoincident
    } else if a1.x1 <= -1.0 && a1.x2 > 1.0 {
        let predicted_stall =
            stall_length(a1, problem.u, problem.v).expect("stalling hypotheses checked above");
        RegionClass::Stalling { predicted_stall }
    } else {
        RegionClass::OutOfScopeOrientation
    }
}

/// `(u1 + 1) v1^2`, the per-step advance of `a_{n+1}(1) + q_n(1)` while stalled.
fn stall_step(u: Vec2, v: Vec2) -> f64 {
    (u.x1 + 1.0) * (v.x1 * v.x1)
}

/// Number of iterates `b_1 = ... = b_n = (-1, 1)` before the run breaks free:
/// `n = 1 + floor((-1 - a1(1)) / ((u1 + 1) v1^2))`.
///
/// The ratio is evaluated in floating point; ratios within an ulp of an
/// integer may round either way.
pub fn stall_length(a1: Vec2, u: Vec2, v: Vec2) -> Result<u64> {
    check_canonical(u, v)?;
    if !(a1.x1 <= -1.0 && a1.x2 > 1.0) {
        return Err(Error::Precondition(format!(
            "a1 = {a1} needs a1(1) <= -1 and a1(2) > 1"
        )));
    }
    let ratio = (-1.0 - a1.x1) / stall_step(u, v);
    if !ratio.is_finite() || ratio >= u64::MAX as f64 {
        return Err(Error::Precondition(format!("stall ratio {ratio} out of range")));
    }
    Ok(1 + ratio.floor() as u64)
}

/// Abscissa of `b_{n+1}`, the first iterate off the vertex:
/// `a1(1) + n (u1 + 1) v1^2`. Its ordinate is 1.
pub fn break_free_abscissa(a1: Vec2, u: Vec2, v: Vec2, n: u64) -> Result<f64> {
    let expected = stall_length(a1, u, v)?;
    if n != expected {
        return Err(Error::Precondition(format!(
            "n = {n} is not the stall length {expected}"
        )));
    }
    Ok(a1.x1 + n as f64 * stall_step(u, v))
}

/// `a_{n+1} = b_n + (u1 - b_n(1)) v1 v` for `b_n` on the top edge left of `u`.
pub fn closed_form_a_next(b_n: Vec2, u: Vec2, v: Vec2) -> Result<Vec2> {
    check_canonical(u, v)?;
    if b_n.x2 != 1.0 || !(b_n.x1 <= u.x1) {
        return Err(Error::Precondition(format!(
            "b_n = {b_n} must lie on x2 = 1 with b_n(1) <= u1"
        )));
    }
    Ok(b_n + v * ((u.x1 - b_n.x1) * v.x1))
}

/// `q_n = (n - 1)(u1 + 1) v1 v + a1 + (1, -1)`, valid while `b_1..b_n` are stalled.
pub fn closed_form_q(n: u64, a1: Vec2, u: Vec2, v: Vec2) -> Result<Vec2> {
    let stall = stall_length(a1, u, v)?;
    if n == 0 || n > stall {
        return Err(Error::Precondition(format!(
            "n = {n} outside the stalled range 1..={stall}"
        )));
    }
    Ok(v * ((n - 1) as f64 * (u.x1 + 1.0) * v.x1) + a1 + Vec2::new(1.0, -1.0))
}

/// Whether `b_{n+1}` is still the vertex: `n (u1 + 1) v1^2 + a1(1) <= -1`.
pub fn stall_condition(n: u64, a1: Vec2, u: Vec2, v: Vec2) -> bool {
    n as f64 * stall_step(u, v) + a1.x1 <= -1.0
}

/// The limit `P_{A∩B} z` predicted for a canonical problem.
pub fn analytic_limit(problem: &LineSquareProblem) -> Result<Vec2> {
    match classify_region(problem) {
        RegionClass::RapidFinite => Ok(problem.a1()),
        RegionClass::MapCoincident | RegionClass::Stalling { .. } => Ok(problem.u),
        RegionClass::ParallelFinite => unreachable!("canonical problems are not parallel"),
        RegionClass::OutOfScopeOrientation => Err(Error::Unsupported(
            "no closed form for this orientation".into(),
        )),
    }
}

/// Limit for the axis-parallel line `R x {alpha}`: `P_B P_A z`.
pub fn parallel_limit(alpha: f64, z: Vec2) -> Result<Vec2> {
    if !(alpha.abs() <= 1.0) || !z.is_finite() {
        return Err(Error::Precondition(format!(
            "need |alpha| <= 1 and finite z, got alpha = {alpha}"
        )));
    }
    Ok(Vec2::new(z.x1.clamp(-1.0, 1.0), alpha))
}

/// Classification of raw (not necessarily canonical) line-square data.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: RegionClass,
    pub transform: Transform,
    /// Canonical problem; absent in the parallel case.
    pub problem: Option<LineSquareProblem>,
    /// Predicted `P_{A∩B} z` in the caller's coordinates, when a closed form applies.
    pub limit: Option<Vec2>,
}

/// Normalizes, classifies and predicts the limit for the line `u + {v}^perp`.
pub fn classify(u: Vec2, v: Vec2, z: Vec2) -> Result<Classification> {
    match normalize_symmetry(u, v, z)? {
        Normalized::Parallel { alpha, transform } => {
            let limit = parallel_limit(alpha, transform.apply(z))?;
            Ok(Classification {
                class: RegionClass::ParallelFinite,
                transform,
                problem: None,
                limit: Some(transform.invert(limit)),
            })
        }
        Normalized::Canonical { problem, transform } => {
            let class = classify_region(&problem);
            let limit = analytic_limit(&problem).ok().map(|l| transform.invert(l));
            Ok(Classification {
                class,
                transform,
                problem: Some(problem),
                limit,
            })
        }
    }
}

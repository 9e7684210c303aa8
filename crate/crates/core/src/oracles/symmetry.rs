//! Symmetries of the square `[-1,1]^2` and the map to canonical pose.

use std::fmt;

use serde::Serialize;

use super::line_square::LineSquareProblem;
use crate::error::{Error, Result};
use crate::sets::{SetDescriptor, Vec2};

/// A symmetry of the square: optional coordinate swap, then sign flips of
/// the (swapped) coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Transform {
    pub swap: bool,
    pub flip1: bool,
    pub flip2: bool,
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        swap: false,
        flip1: false,
        flip2: false,
    };

    /// All eight symmetries, fewest reflections first; ties prefer a
    /// coordinate-2 flip, then a coordinate-1 flip, then the swap.
    pub const PREFERENCE: [Transform; 8] = [
        Transform::new(false, false, false),
        Transform::new(false, false, true),
        Transform::new(false, true, false),
        Transform::new(true, false, false),
        Transform::new(false, true, true),
        Transform::new(true, false, true),
        Transform::new(true, true, false),
        Transform::new(true, true, true),
    ];

    pub const fn new(swap: bool, flip1: bool, flip2: bool) -> Self {
        Self { swap, flip1, flip2 }
    }

    pub fn reflections(&self) -> usize {
        self.swap as usize + self.flip1 as usize + self.flip2 as usize
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn apply(&self, x: Vec2) -> Vec2 {
        let y = if self.swap { Vec2::new(x.x2, x.x1) } else { x };
        Vec2::new(
            if self.flip1 { -y.x1 } else { y.x1 },
            if self.flip2 { -y.x2 } else { y.x2 },
        )
    }

    pub fn invert(&self, y: Vec2) -> Vec2 {
        let x = Vec2::new(
            if self.flip1 { -y.x1 } else { y.x1 },
            if self.flip2 { -y.x2 } else { y.x2 },
        );
        if self.swap {
            Vec2::new(x.x2, x.x1)
        } else {
            x
        }
    }

    /// Operation names in application order, e.g. `["swap", "flip2"]`.
    pub fn ops(&self) -> Vec<&'static str> {
        let mut ops = Vec::new();
        if self.swap {
            ops.push("swap");
        }
        if self.flip1 {
            ops.push("flip1");
        }
        if self.flip2 {
            ops.push("flip2");
        }
        ops
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("identity")
        } else {
            f.write_str(&self.ops().join("+"))
        }
    }
}

/// Outcome of [`normalize_symmetry`].
#[derive(Clone, Debug, PartialEq)]
pub enum Normalized {
    Canonical {
        problem: LineSquareProblem,
        transform: Transform,
    },
    /// The line is axis-parallel; after `transform` it reads `R x {alpha}`.
    Parallel { alpha: f64, transform: Transform },
}

impl Normalized {
    pub fn transform(&self) -> Transform {
        match self {
            Normalized::Canonical { transform, .. } | Normalized::Parallel { transform, .. } => {
                *transform
            }
        }
    }
}

/// Endpoints of the chord the line `{x : <x - u, v> = 0}` cuts from the square.
fn chord(u: Vec2, v: Vec2) -> Vec<Vec2> {
    let c = u.dot(v);
    let mut pts: Vec<Vec2> = Vec::with_capacity(4);
    for s in [-1.0, 1.0] {
        // horizontal edges x2 = s
        if v.x1 != 0.0 {
            let x1 = (c - v.x2 * s) / v.x1;
            if x1.abs() <= 1.0 {
                pts.push(Vec2::new(x1, s));
            }
        }
        // vertical edges x1 = s
        if v.x2 != 0.0 {
            let x2 = (c - v.x1 * s) / v.x2;
            if x2.abs() <= 1.0 {
                pts.push(Vec2::new(s, x2));
            }
        }
    }
    let mut out: Vec<Vec2> = Vec::with_capacity(2);
    for p in pts {
        if out.iter().all(|q| (p - *q).max_abs() > 1e-12) {
            out.push(p);
        }
    }
    out
}

/// Canonical pose for the chord end `e`: `e` lands on the top edge away
/// from the corner `(-1, 1)`, and `v` (up to sign) in the open positive quadrant.
fn pose_at(e: Vec2, v: Vec2) -> Option<(Transform, Vec2, Vec2)> {
    Transform::PREFERENCE.into_iter().find_map(|t| {
        let u = t.apply(e);
        let mut w = t.apply(v);
        if w.x1 < 0.0 && w.x2 < 0.0 {
            w = -w;
        }
        (u.x2 == 1.0 && u.x1 > -1.0 && w.x1 > 0.0 && w.x2 > 0.0).then_some((t, u, w))
    })
}

/// Maps a line `u + {v}^perp` and start `z` onto canonical pose by a
/// symmetry of the square.
///
/// The chord end nearest `P_A z` becomes the top-edge point `u`, so `P_A z`
/// lands in one of the three analysed regions whenever that end is not a
/// corner. If the nearest end cannot be posed (it is a corner through which
/// the line leaves the square) the other end is used.
pub fn normalize_symmetry(u: Vec2, v: Vec2, z: Vec2) -> Result<Normalized> {
    let line = SetDescriptor::line(u, v)?;
    if !z.is_finite() {
        return Err(Error::NonFinite("z"));
    }
    let SetDescriptor::Line { u, v } = line else {
        unreachable!("line constructor returns a line")
    };

    if v.x1 == 0.0 || v.x2 == 0.0 {
        let transform = if v.x1 == 0.0 {
            Transform::IDENTITY
        } else {
            Transform::new(true, false, false)
        };
        let alpha = transform.apply(u).x2;
        if alpha.abs() > 1.0 {
            return Err(Error::Infeasible("line misses the square".into()));
        }
        return Ok(Normalized::Parallel { alpha, transform });
    }

    let ends = chord(u, v);
    match ends.len() {
        0 => return Err(Error::Infeasible("line misses the square".into())),
        1 => {
            return Err(Error::Degenerate(format!(
                "line touches the square only at {}",
                ends[0]
            )))
        }
        _ => {}
    }

    let a1 = line.project_vec2(z);
    let (near, far) = if (ends[0] - a1).norm() <= (ends[1] - a1).norm() {
        (ends[0], ends[1])
    } else {
        (ends[1], ends[0])
    };
    let (transform, cu, cv) = pose_at(near, v).or_else(|| pose_at(far, v)).ok_or_else(|| {
        Error::Degenerate(format!(
            "chord from {near} to {far} joins two corners; no canonical pose"
        ))
    })?;
    let problem = LineSquareProblem::new(cu, cv, transform.apply(z))?;
    Ok(Normalized::Canonical { problem, transform })
}

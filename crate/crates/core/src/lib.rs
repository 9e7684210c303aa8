//! Dykstra's algorithm and the method of alternating projections (MAP) for
//! the intersection of two closed convex sets in the plane (or on the line),
//! with closed-form predictions for the line-versus-square case study.
//!
//! - [`sets`]: projections, membership, normal cones, and a search-based
//!   nearest-point reference.
//! - [`solvers`]: iteration states, full runs with traces, finite-fixpoint
//!   detection, the finite-convergence predicate and the Dykstra/MAP
//!   coincidence check.
//! - [`oracles`]: region classification, stall length, break-free point and
//!   per-iterate closed forms for a line against `[-1,1]^2`; the
//!   two-interval trace; the cone-ball identity.
//! - [`cli`]: presets, scenario files, trace/CSV export and the commands
//!   behind the `dykstra` binary.

// Negated float comparisons like `!(x <= y)` are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod oracles;
pub mod sets;
pub mod solvers;

pub use error::{Error, Result};
pub use sets::{Point, SetDescriptor, Vec2};
pub use solvers::{run_dykstra, run_map, Stop, Termination, Trace};

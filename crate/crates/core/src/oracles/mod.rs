//! Closed-form predictions checked against the iterative solvers.

mod cone_ball;
mod line_square;
mod symmetry;
mod two_interval;

pub use cone_ball::cone_ball_projection;
pub use line_square::{
    analytic_limit, break_free_abscissa, classify, classify_region, closed_form_a_next,
    closed_form_q, parallel_limit, stall_condition, stall_length, Classification,
    LineSquareProblem, RegionClass, STALL_VERTEX,
};
pub use symmetry::{normalize_symmetry, Normalized, Transform};
pub use two_interval::two_interval_trace;

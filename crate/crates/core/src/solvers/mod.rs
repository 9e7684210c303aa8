//! Dykstra and MAP iterations, full runs, and the finite-convergence checks.

mod checks;
mod state;
mod trace;

pub use checks::{
    coincidence_check, coincidence_report, detect_finite_fixpoint, finite_convergence_predicate,
    Clause, CoincidenceReport, FiniteConvergence,
};
pub use state::{dykstra_step, map_step, DykstraState, MapState};
pub use trace::{
    fixpoint_tolerance, run_dykstra, run_map, Algorithm, Records, Stop, Termination, Trace,
    FIXPOINT_TOL,
};

//! Finite-convergence tests and the Dykstra/MAP coincidence check.

use super::state::DykstraState;
use super::trace::{Algorithm, Termination, Trace};
use crate::error::{Error, Result};
use crate::sets::{Point, SetDescriptor, NORMAL_CONE_TOL};

/// `b_n = a_n` with `n >= 1`.
pub(crate) fn clause_one(state: &DykstraState, tol: f64) -> bool {
    state.n >= 1 && state.gap().is_some_and(|g| g <= tol)
}

/// `a_{n+1} = b_n` with `n >= 1`.
pub(crate) fn clause_two(prev: &DykstraState, next: &DykstraState, tol: f64) -> bool {
    prev.n >= 1 && next.a.is_some_and(|a| a.dist(&prev.b) <= tol)
}

/// Whether the run is provably stationary from `prev` on: `b_n = a_n` or
/// `a_{n+1} = b_n` for `n >= 1`. At `n = 0` neither clause implies
/// anything (`a_1 = z` does not force `b_1 = a_1`).
pub fn detect_finite_fixpoint(prev: &DykstraState, next: &DykstraState, tol: f64) -> bool {
    clause_one(prev, tol) || clause_two(prev, next, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `z - P_A z` lies in the normal cone of `A` at `P_B P_A z`.
    NormalCone,
    /// `A` is affine and `P_B P_A z` lies in `A`.
    AffineMembership,
}

impl Clause {
    pub fn number(self) -> u8 {
        match self {
            Clause::NormalCone => 1,
            Clause::AffineMembership => 2,
        }
    }
}

/// Outcome of [`finite_convergence_predicate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteConvergence {
    pub normal_cone: bool,
    pub affine_membership: bool,
}

impl FiniteConvergence {
    pub fn holds(&self) -> bool {
        self.normal_cone || self.affine_membership
    }

    /// The clause to report; the affine clause wins when both hold.
    pub fn clause(&self) -> Option<Clause> {
        if self.affine_membership {
            Some(Clause::AffineMembership)
        } else if self.normal_cone {
            Some(Clause::NormalCone)
        } else {
            None
        }
    }
}

/// Sufficient conditions for `P_{A∩B} z = P_B P_A z`, reached by Dykstra
/// after one step. Scalar tests use [`NORMAL_CONE_TOL`].
pub fn finite_convergence_predicate(
    a: &SetDescriptor,
    b: &SetDescriptor,
    z: &Point,
) -> Result<FiniteConvergence> {
    let a1 = a.project(z)?;
    let b1 = b.project(&a1)?;
    let b1_in_a = a.contains(&b1, NORMAL_CONE_TOL)?;
    // N_A(x) is empty off A, so clause (1) needs b1 in A as well.
    let normal_cone = b1_in_a && a.normal_cone_contains(&b1, &(*z - a1), NORMAL_CONE_TOL)?;
    Ok(FiniteConvergence {
        normal_cone,
        affine_membership: a.is_affine() && b1_in_a,
    })
}

/// Result of comparing a Dykstra trace with a MAP trace from the same start.
#[derive(Clone, Debug, PartialEq)]
pub struct CoincidenceReport {
    /// `c_{2n} = b_n` and `c_{2n+1} = a_{n+1}` on every compared index.
    pub coincide: bool,
    /// Number of Dykstra steps compared.
    pub compared: usize,
    /// Per-step max deviation `max(|c_{2n-1} - a_n|, |c_{2n} - b_n|)` for `n = 1..=compared`.
    pub deviations: Vec<f64>,
    /// Indices `n >= 2` with `b_n != P_B a_n` (only when `A` is affine).
    pub mismatches: Vec<usize>,
    /// Both main sequences are constant.
    pub constant: bool,
}

impl CoincidenceReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().copied().fold(0.0, f64::max)
    }
}

/// Main sequence value `a_n` / `b_n`, extended by the limit after a detected fixpoint.
fn dykstra_main(trace: &Trace, n: usize) -> Option<(Point, Point)> {
    let recs = trace.dykstra_records()?;
    match recs.get(n) {
        Some(s) => Some((s.a?, s.b)),
        None if trace.termination == Termination::FixpointDetected => {
            trace.limit.map(|l| (l, l))
        }
        None => None,
    }
}

fn map_value(trace: &Trace, k: usize) -> Option<Point> {
    let recs = trace.map_records()?;
    match recs.get(k) {
        Some(s) => Some(s.c),
        None if trace.termination == Termination::FixpointDetected => trace.limit,
        None => None,
    }
}

/// Compares Dykstra's main sequences with MAP.
///
/// Checks `c_{2n} = b_n`, `c_{2n+1} = a_{n+1}` over the shared index range
/// (a trace ending in a detected fixpoint is extended by its limit). For
/// affine `A` it also checks `b_n = P_B a_n` for `n >= 2` on the Dykstra
/// trace alone; the two verdicts must agree, otherwise
/// [`Error::Inconsistent`] is returned.
pub fn coincidence_report(
    dyk: &Trace,
    map: &Trace,
    a_affine: bool,
    tol: f64,
) -> Result<CoincidenceReport> {
    if dyk.algorithm != Algorithm::Dykstra || map.algorithm != Algorithm::Map {
        return Err(Error::Usage("expected a Dykstra trace and a MAP trace".into()));
    }
    if dyk.z != map.z {
        return Err(Error::Usage(format!(
            "traces start from different points: {} vs {}",
            dyk.z, map.z
        )));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::Usage(format!("tolerance must be finite and >= 0, got {tol}")));
    }

    let dyk_steps = dyk.last_n();
    let map_steps = map.last_n() / 2;
    let both_extended = dyk.termination == Termination::FixpointDetected
        && map.termination == Termination::FixpointDetected;
    let compared = if both_extended {
        dyk_steps.max(map_steps)
    } else {
        let dyk_reach = if dyk.termination == Termination::FixpointDetected {
            usize::MAX
        } else {
            dyk_steps
        };
        let map_reach = if map.termination == Termination::FixpointDetected {
            usize::MAX
        } else {
            map_steps
        };
        dyk_reach.min(map_reach)
    };

    let mut deviations = Vec::with_capacity(compared);
    let mut coincide = true;
    let mut constant = true;
    for n in 1..=compared {
        let (a, b) = dykstra_main(dyk, n).expect("index within compared range");
        let c_odd = map_value(map, 2 * n - 1).expect("index within compared range");
        let c_even = map_value(map, 2 * n).expect("index within compared range");
        let dev = c_odd.max_abs_diff(&a).max(c_even.max_abs_diff(&b));
        coincide &= dev <= tol;
        constant &= a == dyk.z && b == dyk.z;
        deviations.push(dev);
    }

    let mut mismatches = Vec::new();
    if a_affine {
        let b_set = &dyk.sets[1];
        for n in 2..=compared {
            let (a, b) = dykstra_main(dyk, n).expect("index within compared range");
            if b_set.project(&a)?.max_abs_diff(&b) > tol {
                mismatches.push(n);
            }
        }
        if mismatches.is_empty() != coincide {
            return Err(Error::Inconsistent(format!(
                "direct comparison says coincide={coincide} but b_n = P_B a_n fails at {mismatches:?}"
            )));
        }
    }

    Ok(CoincidenceReport {
        coincide,
        compared,
        deviations,
        mismatches,
        constant,
    })
}

/// `true` iff Dykstra's main sequences and MAP coincide; see [`coincidence_report`].
pub fn coincidence_check(dyk: &Trace, map: &Trace, a_affine: bool, tol: f64) -> Result<bool> {
    coincidence_report(dyk, map, a_affine, tol).map(|r| r.coincide)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::Vec2;
    use crate::solvers::{run_dykstra, run_map, Stop};

    fn p2(x1: f64, x2: f64) -> Point {
        Point::from([x1, x2])
    }

    #[test]
    fn clause_one_fires_on_equal_main_iterates() {
        let s = DykstraState {
            n: 1,
            a: Some(p2(0.5, 0.5)),
            b: p2(0.5, 0.5),
            p: p2(0.0, 0.0),
            q: p2(0.0, 0.0),
        };
        let next = DykstraState { n: 2, ..s };
        assert!(detect_finite_fixpoint(&s, &next, 0.0));
    }

    #[test]
    fn clause_two_excludes_n_zero() {
        let s0 = DykstraState::initial(p2(0.0, 2.0));
        let s1 = DykstraState {
            n: 1,
            a: Some(p2(0.0, 2.0)),
            b: p2(0.0, 1.0),
            p: p2(0.0, 0.0),
            q: p2(0.0, 1.0),
        };
        assert!(!detect_finite_fixpoint(&s0, &s1, 0.0));
    }

    #[test]
    fn parallel_line_fires_clause_two_at_one() {
        let a = SetDescriptor::line(Vec2::new(0.0, 0.5), Vec2::new(0.0, 1.0)).unwrap();
        let b = SetDescriptor::square();
        let s0 = DykstraState::initial(p2(3.0, -2.0));
        let s1 = s0.step(&a, &b).unwrap();
        let s2 = s1.step(&a, &b).unwrap();
        assert!(!clause_one(&s1, 1e-13));
        assert!(clause_two(&s1, &s2, 1e-13));
        assert!(detect_finite_fixpoint(&s1, &s2, 1e-13));
    }

    #[test]
    fn quadrant_example_has_no_early_fixpoint() {
        let a = SetDescriptor::boxed(
            Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
            Vec2::new(f64::INFINITY, 0.0),
        )
        .unwrap();
        let b = SetDescriptor::halfspace(Vec2::new(1.0, 1.0), 0.0).unwrap();
        let s1 = DykstraState::initial(p2(1.0, 1.0)).step(&a, &b).unwrap();
        let s2 = s1.step(&a, &b).unwrap();
        // a_2 = P_A(b_1 + p_1) = P_A((0.5, 0.5)) = (0.5, 0)
        assert_eq!(s2.a, Some(p2(0.5, 0.0)));
        assert!(!detect_finite_fixpoint(&s1, &s2, 1e-13));
    }

    #[test]
    fn predicate_cone_ball() {
        let r = finite_convergence_predicate(
            &SetDescriptor::Orthant,
            &SetDescriptor::ball(Vec2::ZERO, 1.0).unwrap(),
            &p2(2.0, -1.0),
        )
        .unwrap();
        assert!(r.holds());
        assert_eq!(r.clause(), Some(Clause::NormalCone));
    }

    #[test]
    fn predicate_parallel_line() {
        let a = SetDescriptor::line(Vec2::new(0.0, 0.5), Vec2::new(0.0, 1.0)).unwrap();
        for z in [p2(3.0, -2.0), p2(-0.3, 0.9), p2(10.0, 10.0)] {
            let r = finite_convergence_predicate(&a, &SetDescriptor::square(), &z).unwrap();
            assert_eq!(r.clause().map(Clause::number), Some(2));
        }
    }

    #[test]
    fn predicate_fails_for_two_intervals() {
        let a = SetDescriptor::interval(0.0, f64::INFINITY).unwrap();
        let b = SetDescriptor::interval(1.0, f64::INFINITY).unwrap();
        let r = finite_convergence_predicate(&a, &b, &Point::R1(-1.0)).unwrap();
        assert!(!r.holds());
        assert_eq!(r.clause(), None);
    }

    #[test]
    fn feasible_start_coincides_trivially() {
        let a = SetDescriptor::line(Vec2::new(0.0, 1.0), Vec2::new(0.6, 0.8)).unwrap();
        let b = SetDescriptor::square();
        let z = p2(0.6, 0.55);
        assert!(a.contains(&z, 1e-15).unwrap());
        let d = run_dykstra(&a, &b, &z, Stop::default()).unwrap();
        let m = run_map(&a, &b, &z, Stop::default()).unwrap();
        let r = coincidence_report(&d, &m, true, 1e-12).unwrap();
        assert!(r.coincide && r.constant);
    }

    #[test]
    fn different_starts_rejected() {
        let a = SetDescriptor::line(Vec2::new(0.0, 1.0), Vec2::new(0.6, 0.8)).unwrap();
        let b = SetDescriptor::square();
        let d = run_dykstra(&a, &b, &p2(0.0, 0.0), Stop::default()).unwrap();
        let m = run_map(&a, &b, &p2(0.1, 0.0), Stop::default()).unwrap();
        assert!(matches!(coincidence_check(&d, &m, true, 1e-12), Err(Error::Usage(_))));
        assert!(coincidence_check(&m, &d, true, 1e-12).is_err());
    }
}

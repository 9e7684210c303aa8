use serde::{Deserialize, Serialize};

use super::checks::{clause_one, clause_two};
use super::state::{DykstraState, MapState};
use crate::error::{Error, Result};
use crate::sets::{Point, SetDescriptor};

/// Fixpoint tolerance when some projection involves rounding.
pub const FIXPOINT_TOL: f64 = 1e-13;

/// Stopping rule: `tol` on the gap between consecutive main iterates and an
/// iteration cap.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Stop {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for Stop {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iter: 100_000,
        }
    }
}

impl Stop {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(Error::Usage(format!("tol must be finite and >= 0, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::Usage("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Dykstra,
    Map,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    FixpointDetected,
    MaxIterations,
}

impl Termination {
    pub fn is_success(self) -> bool {
        !matches!(self, Termination::MaxIterations)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Converged => "converged",
            Termination::FixpointDetected => "fixpoint_detected",
            Termination::MaxIterations => "max_iterations",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Records {
    Dykstra(Vec<DykstraState>),
    Map(Vec<MapState>),
}

impl Records {
    pub fn len(&self) -> usize {
        match self {
            Records::Dykstra(r) => r.len(),
            Records::Map(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Every visited state of one run plus how it ended.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTrace")]
pub struct Trace {
    pub algorithm: Algorithm,
    pub z: Point,
    pub sets: [SetDescriptor; 2],
    pub termination: Termination,
    pub records: Records,
    pub limit: Option<Point>,
}

#[derive(Deserialize)]
struct RawTrace {
    algorithm: Algorithm,
    z: Point,
    sets: [SetDescriptor; 2],
    termination: Termination,
    records: Records,
    limit: Option<Point>,
}

impl TryFrom<RawTrace> for Trace {
    type Error = Error;

    fn try_from(raw: RawTrace) -> Result<Self> {
        let records_match = matches!(
            (raw.algorithm, &raw.records),
            (Algorithm::Dykstra, Records::Dykstra(_)) | (Algorithm::Map, Records::Map(_))
        );
        if !records_match {
            return Err(Error::Usage(format!(
                "records do not match algorithm {:?}",
                raw.algorithm
            )));
        }
        let contiguous = match &raw.records {
            Records::Dykstra(r) => r.iter().enumerate().all(|(i, s)| s.n == i),
            Records::Map(r) => r.iter().enumerate().all(|(i, s)| s.n == i),
        };
        if !contiguous || raw.records.is_empty() {
            return Err(Error::Usage("records must be contiguous in n from 0".into()));
        }
        Ok(Trace {
            algorithm: raw.algorithm,
            z: raw.z,
            sets: raw.sets,
            termination: raw.termination,
            records: raw.records,
            limit: raw.limit,
        })
    }
}

impl Trace {
    pub fn dykstra_records(&self) -> Option<&[DykstraState]> {
        match &self.records {
            Records::Dykstra(r) => Some(r),
            Records::Map(_) => None,
        }
    }

    pub fn map_records(&self) -> Option<&[MapState]> {
        match &self.records {
            Records::Map(r) => Some(r),
            Records::Dykstra(_) => None,
        }
    }

    /// Index of the last record.
    pub fn last_n(&self) -> usize {
        self.records.len() - 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Usage(format!("bad trace JSON: {e}")))
    }
}

/// Tolerance used by the finite-fixpoint tests: exact when both projections
/// are clamps, [`FIXPOINT_TOL`] otherwise.
pub fn fixpoint_tolerance(a: &SetDescriptor, b: &SetDescriptor) -> f64 {
    if a.is_clamp_based() && b.is_clamp_based() {
        0.0
    } else {
        FIXPOINT_TOL
    }
}

fn check_problem(a: &SetDescriptor, b: &SetDescriptor, z: &Point, stop: &Stop) -> Result<()> {
    a.validate()?;
    b.validate()?;
    stop.validate()?;
    z.ensure_dim(a.dim())?;
    z.ensure_dim(b.dim())?;
    if !z.is_finite() {
        return Err(Error::NonFinite("z"));
    }
    Ok(())
}

/// Runs Dykstra's algorithm (projecting onto `a` first) from `z`.
///
/// Stops with `FixpointDetected` when `b_n = a_n` or `a_{n+1} = b_n`
/// (n >= 1) holds to the fixpoint tolerance, with `Converged` once
/// `|b_n - a_n| <= tol`, and otherwise after `max_iter` steps.
pub fn run_dykstra(a: &SetDescriptor, b: &SetDescriptor, z: &Point, stop: Stop) -> Result<Trace> {
    check_problem(a, b, z, &stop)?;
    let fix_tol = fixpoint_tolerance(a, b);
    let mut records = vec![DykstraState::initial(*z)];
    let mut termination = Termination::MaxIterations;
    let mut limit = None;

    for _ in 0..stop.max_iter {
        let prev = *records.last().expect("records start non-empty");
        let next = prev.step(a, b)?;
        records.push(next);

        if prev.n >= 1 && clause_two(&prev, &next, fix_tol) {
            termination = Termination::FixpointDetected;
            limit = Some(prev.b);
            break;
        }
        if clause_one(&next, fix_tol) {
            termination = Termination::FixpointDetected;
            limit = Some(next.b);
            break;
        }
        if next.gap().is_some_and(|g| g <= stop.tol) {
            termination = Termination::Converged;
            limit = Some(next.b);
            break;
        }
    }

    Ok(Trace {
        algorithm: Algorithm::Dykstra,
        z: *z,
        sets: [*a, *b],
        termination,
        records: Records::Dykstra(records),
        limit,
    })
}

/// Runs MAP from `z`. `max_iter` counts full `P_B P_A` sweeps, so the trace
/// holds at most `2 max_iter + 1` records.
pub fn run_map(a: &SetDescriptor, b: &SetDescriptor, z: &Point, stop: Stop) -> Result<Trace> {
    check_problem(a, b, z, &stop)?;
    let fix_tol = fixpoint_tolerance(a, b);
    let mut records = vec![MapState::initial(*z)];
    let mut termination = Termination::MaxIterations;
    let mut limit = None;

    for _ in 0..2 * stop.max_iter {
        let prev = *records.last().expect("records start non-empty");
        let next = prev.step(a, b)?;
        records.push(next);

        let moved = next.c.dist(&prev.c);
        // c_1 = c_0 only says z is in A.
        if next.n >= 2 && moved <= fix_tol {
            termination = Termination::FixpointDetected;
            limit = Some(next.c);
            break;
        }
        if next.n % 2 == 0 && moved <= stop.tol {
            termination = Termination::Converged;
            limit = Some(next.c);
            break;
        }
    }

    Ok(Trace {
        algorithm: Algorithm::Map,
        z: *z,
        sets: [*a, *b],
        termination,
        records: Records::Map(records),
        limit,
    })
}

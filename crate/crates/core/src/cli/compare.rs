//! Side-by-side report of a Dykstra run and a MAP run.

use std::fmt::Write as _;

use crate::error::Result;
use crate::sets::Point;
use crate::solvers::{coincidence_report, Records, Trace};

/// Main-sequence points `a_n`, `b_n` (n >= 1) of a Dykstra trace or `c_k`
/// (k >= 1) of a MAP trace.
pub fn orbit_points(trace: &Trace) -> Vec<Point> {
    match &trace.records {
        Records::Dykstra(r) => r
            .iter()
            .skip(1)
            .flat_map(|s| s.a.into_iter().chain(std::iter::once(s.b)))
            .collect(),
        Records::Map(r) => r.iter().skip(1).map(|s| s.c).collect(),
    }
}

fn first_coord(p: &Point) -> f64 {
    p.coords()[0]
}

/// Whether every point of each list lies within `tol` (max-norm) of some
/// point of the other.
pub fn same_point_set(xs: &[Point], ys: &[Point], tol: f64) -> bool {
    covered(xs, ys, tol) && covered(ys, xs, tol)
}

fn covered(xs: &[Point], ys: &[Point], tol: f64) -> bool {
    let mut sorted: Vec<&Point> = ys.iter().collect();
    sorted.sort_by(|p, q| first_coord(p).total_cmp(&first_coord(q)));
    xs.iter().all(|x| {
        let lo = first_coord(x) - tol;
        let start = sorted.partition_point(|p| first_coord(p) < lo);
        sorted[start..]
            .iter()
            .take_while(|p| first_coord(p) <= first_coord(x) + tol)
            .any(|p| p.max_abs_diff(x) <= tol)
    })
}

/// Text report: per-iteration deviations, the coincidence verdict, run
/// lengths and the point-set comparison.
pub fn render(dyk: &Trace, map: &Trace, a_affine: bool, tol: f64) -> Result<String> {
    let report = coincidence_report(dyk, map, a_affine, tol)?;
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "n,max_deviation");
    for (i, d) in report.deviations.iter().enumerate() {
        let _ = writeln!(w, "{},{d:e}", i + 1);
    }
    let _ = writeln!(w, "max deviation: {:e} over {} iterations", report.max_deviation(), report.compared);

    let verdict = if report.coincide && report.constant {
        "yes (constant)".to_string()
    } else if report.coincide {
        "yes".to_string()
    } else if let Some(&n) = report.mismatches.last() {
        format!("no (b_{{{n}}} ≠ P_B(a_{n}))")
    } else {
        let first = report
            .deviations
            .iter()
            .position(|&d| d > tol)
            .map_or(0, |i| i + 1);
        format!("no (first deviation at n={first})")
    };
    let _ = writeln!(w, "coincide: {verdict}");
    if !report.mismatches.is_empty() {
        let list: Vec<String> = report.mismatches.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(w, "b_n ≠ P_B(a_n) at n = {}", list.join(","));
    }

    let limit = |t: &Trace| t.limit.map_or_else(|| "none".to_string(), |l| l.to_string());
    let _ = writeln!(
        w,
        "dykstra: {} after {} iterations, limit {}",
        dyk.termination.as_str(),
        dyk.last_n(),
        limit(dyk)
    );
    let _ = writeln!(
        w,
        "map: {} after {} sweeps ({} projections), limit {}",
        map.termination.as_str(),
        map.last_n().div_ceil(2),
        map.last_n(),
        limit(map)
    );
    let same = same_point_set(&orbit_points(dyk), &orbit_points(map), tol);
    let _ = writeln!(w, "orbits as point sets: {}", if same { "equal" } else { "differ" });
    Ok(out)
}

//! Trace JSON and orbit CSV files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sets::Point;
use crate::solvers::{Records, Trace};

pub const ORBIT_HEADER: &str = "n,seq,x1,x2";

fn push_row(out: &mut String, n: usize, seq: char, p: &Point) {
    // 1-d points leave x2 empty.
    match *p {
        Point::R1(t) => writeln!(out, "{n},{seq},{t},"),
        Point::R2(v) => writeln!(out, "{n},{seq},{},{}", v.x1, v.x2),
    }
    .expect("writing to a String cannot fail");
}

/// Orbit as CSV with header `n,seq,x1,x2`.
///
/// Dykstra traces give an `a` and a `b` row for every `n >= 1` (`a_0` does
/// not exist and `b_0 = z`); MAP traces give one `c` row per record, `c_0 = z`
/// included.
pub fn orbit_csv(trace: &Trace) -> String {
    let mut out = String::from(ORBIT_HEADER);
    out.push('\n');
    match &trace.records {
        Records::Dykstra(recs) => {
            for s in recs.iter().skip(1) {
                if let Some(a) = &s.a {
                    push_row(&mut out, s.n, 'a', a);
                }
                push_row(&mut out, s.n, 'b', &s.b);
            }
        }
        Records::Map(recs) => {
            for s in recs {
                push_row(&mut out, s.n, 'c', &s.c);
            }
        }
    }
    out
}

/// `dir/name.ext` becomes `dir/name.<tag>.ext` (or `name.<tag>` without an extension).
pub fn tagged_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{tag}"),
    };
    path.with_file_name(name)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{SetDescriptor, Vec2};
    use crate::solvers::{run_dykstra, run_map, Stop};

    #[test]
    fn dykstra_rows_skip_the_initial_record() {
        let a = SetDescriptor::line(Vec2::new(0.0, 1.0), Vec2::new(0.6, 0.8)).unwrap();
        let z = Point::from([-2.0, 2.5]);
        let t = run_dykstra(&a, &SetDescriptor::square(), &z, Stop::default()).unwrap();
        let csv = orbit_csv(&t);
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows[0], ORBIT_HEADER);
        assert_eq!(rows.len() - 1, 2 * t.last_n());
        assert_eq!(rows.iter().filter(|r| r.ends_with(",b,-1,1")).count(), 3);
        assert!(!csv.contains("NaN"));
    }

    #[test]
    fn map_rows_include_the_start() {
        let a = SetDescriptor::interval(0.0, f64::INFINITY).unwrap();
        let b = SetDescriptor::interval(1.0, f64::INFINITY).unwrap();
        let t = run_map(&a, &b, &Point::R1(-1.0), Stop::default()).unwrap();
        let csv = orbit_csv(&t);
        assert_eq!(csv.lines().nth(1), Some("0,c,-1,"));
        assert_eq!(csv.lines().count() - 1, t.records.len());
    }

    #[test]
    fn tags_go_before_the_extension() {
        assert_eq!(tagged_path(Path::new("out/run.csv"), "map"), PathBuf::from("out/run.map.csv"));
        assert_eq!(tagged_path(Path::new("trace"), "map"), PathBuf::from("trace.map"));
    }
}

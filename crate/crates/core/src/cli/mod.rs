//! Command-line front end behind the `dykstra` binary.
//!
//! Exit status: 0 when every run converged or hit a detected fixpoint, 2 when
//! some run stopped at its iteration cap, 1 on usage or input errors.
//! Diagnostics go to the error stream; data goes to files and standard output.

mod compare;
mod export;
mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use compare::{orbit_points, render as render_comparison, same_point_set};
pub use export::{orbit_csv, tagged_path, ORBIT_HEADER};
pub use scenario::{preset, AlgorithmChoice, OutputSpec, Preset, ScenarioSpec, PRESETS};

use crate::error::{Error, Result};
use crate::oracles::{classify, RegionClass};
use crate::sets::{SetDescriptor, Vec2};
use crate::solvers::{run_dykstra, run_map, Algorithm, Stop, Termination, Trace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MAX_ITER: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dykstra", version, about = "Dykstra's algorithm and alternating projections in the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario file or a preset and export traces.
    Run(RunArgs),
    /// Classify a line-versus-square start point and predict the outcome.
    Classify(GeometryArgs),
    /// Run Dykstra and MAP side by side and compare their main sequences.
    Compare(CompareArgs),
    /// List the built-in presets.
    Presets,
}

#[derive(Args, Debug)]
struct StopArgs {
    /// Stop once consecutive main iterates are this close.
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration cap (full sweeps for MAP).
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
}

impl StopArgs {
    fn apply(&self, stop: &mut Stop) {
        if let Some(t) = self.tol {
            stop.tol = t;
        }
        if let Some(m) = self.max_iter {
            stop.max_iter = m;
        }
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Scenario JSON file.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    spec: Option<PathBuf>,
    /// Built-in preset name (see `presets`).
    #[arg(long)]
    preset: Option<String>,
    #[command(flatten)]
    stop: StopArgs,
    /// Trace JSON output path; replaces the outputs listed in the scenario.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Orbit CSV output path; replaces the outputs listed in the scenario.
    #[arg(long)]
    orbit: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GeometryArgs {
    /// A point on the line, as X,Y.
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    u: Vec2,
    /// A normal vector of the line, as X,Y.
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    v: Vec2,
    /// Starting point, as X,Y.
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    z: Vec2,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// A point on the line, as X,Y.
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true, requires_all = ["v", "z"])]
    u: Option<Vec2>,
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    v: Option<Vec2>,
    #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
    z: Option<Vec2>,
    /// Scenario JSON file instead of line/square geometry.
    #[arg(long, conflicts_with_all = ["u", "preset"])]
    spec: Option<PathBuf>,
    /// Preset instead of line/square geometry.
    #[arg(long, conflicts_with = "u")]
    preset: Option<String>,
    #[command(flatten)]
    stop: StopArgs,
    /// Tolerance for the coincidence and point-set comparisons.
    #[arg(long = "compare-tol", default_value_t = 1e-12)]
    compare_tol: f64,
}

fn parse_vec2(s: &str) -> std::result::Result<Vec2, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y] = parts.as_slice() else {
        return Err(format!("expected X,Y, got {s:?}"));
    };
    let x: f64 = x.parse().map_err(|e| format!("{x:?}: {e}"))?;
    let y: f64 = y.parse().map_err(|e| format!("{y:?}: {e}"))?;
    let v = Vec2::new(x, y);
    if !v.is_finite() {
        return Err(format!("non-finite coordinate in {s:?}"));
    }
    Ok(v)
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args, out, err),
        Command::Classify(args) => cmd_classify(&args, out),
        Command::Compare(args) => cmd_compare(&args, out, err),
        Command::Presets => cmd_presets(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Usage(format!("output failed: {e}"))
}

fn load_scenario(spec: Option<&PathBuf>, preset_name: Option<&str>) -> Result<ScenarioSpec> {
    match (spec, preset_name) {
        (Some(path), _) => ScenarioSpec::load(path),
        (None, Some(name)) => Ok(preset(name)?.scenario()),
        (None, None) => Err(Error::Usage("give --spec FILE or --preset NAME".into())),
    }
}

/// Runs the requested algorithm(s) of `spec`.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<Vec<Trace>> {
    spec.validate()?;
    let [a, b] = &spec.sets;
    let mut traces = Vec::new();
    if spec.algorithm != AlgorithmChoice::Map {
        traces.push(run_dykstra(a, b, &spec.z, spec.stop)?);
    }
    if spec.algorithm != AlgorithmChoice::Dykstra {
        traces.push(run_map(a, b, &spec.z, spec.stop)?);
    }
    Ok(traces)
}

fn algorithm_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Dykstra => "dykstra",
        Algorithm::Map => "map",
    }
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut spec = load_scenario(args.spec.as_ref(), args.preset.as_deref())?;
    args.stop.apply(&mut spec.stop);
    if args.trace.is_some() || args.orbit.is_some() {
        spec.outputs = vec![OutputSpec {
            trace: args.trace.clone(),
            orbit: args.orbit.clone(),
        }];
    }
    let traces = run_scenario(&spec)?;
    let tag_map = spec.algorithm == AlgorithmChoice::Both;

    let mut code = EXIT_OK;
    for t in &traces {
        let name = algorithm_name(t.algorithm);
        let limit = t.limit.map_or_else(|| "none".to_string(), |l| l.to_string());
        writeln!(
            out,
            "{name}: {} at n={}, limit {limit}",
            t.termination.as_str(),
            t.last_n()
        )
        .map_err(io_err)?;
        if t.termination == Termination::MaxIterations {
            let _ = writeln!(err, "warning: {name} stopped at the iteration cap");
            code = EXIT_MAX_ITER;
        }
        for o in &spec.outputs {
            let place = |p: &PathBuf| {
                if tag_map && t.algorithm == Algorithm::Map {
                    tagged_path(p, "map")
                } else {
                    p.clone()
                }
            };
            if let Some(p) = &o.trace {
                export::write_file(&place(p), &t.to_json())?;
            }
            if let Some(p) = &o.orbit {
                export::write_file(&place(p), &orbit_csv(t))?;
            }
        }
    }
    Ok(code)
}

fn cmd_classify(args: &GeometryArgs, out: &mut dyn Write) -> Result<i32> {
    let c = classify(args.u, args.v, args.z)?;
    if args.json {
        let stall = match c.class {
            RegionClass::Stalling { predicted_stall } => Some(predicted_stall),
            _ => None,
        };
        let canonical = c.problem.map(|p| {
            serde_json::json!({"u": p.u, "v": p.v, "z": p.z, "a1": p.a1()})
        });
        let value = serde_json::json!({
            "class": c.class.name(),
            "predicted_stall": stall,
            "limit": c.limit,
            "transform": {"ops": c.transform.ops(), "swap": c.transform.swap,
                          "flip1": c.transform.flip1, "flip2": c.transform.flip2},
            "canonical": canonical,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json value"))
            .map_err(io_err)?;
    } else {
        let limit = c.limit.map_or_else(|| "unknown".to_string(), |l| l.to_string());
        writeln!(out, "{}, limit={limit}", c.class).map_err(io_err)?;
        writeln!(out, "transform: {}", c.transform).map_err(io_err)?;
        if let Some(p) = c.problem {
            writeln!(out, "canonical: u={} v={} z={} a1={}", p.u, p.v, p.z, p.a1())
                .map_err(io_err)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut spec = match (args.u, args.v, args.z) {
        (Some(u), Some(v), Some(z)) => {
            ScenarioSpec::new(SetDescriptor::line(u, v)?, SetDescriptor::square(), z)
        }
        (None, ..) => load_scenario(args.spec.as_ref(), args.preset.as_deref())?,
        _ => return Err(Error::Usage("give all of --u, --v and --z".into())),
    };
    args.stop.apply(&mut spec.stop);
    spec.validate()?;
    if !(args.compare_tol.is_finite() && args.compare_tol >= 0.0) {
        return Err(Error::Usage(format!("--compare-tol must be >= 0, got {}", args.compare_tol)));
    }
    let [a, b] = &spec.sets;
    let a_affine = a.is_affine();
    if !a_affine {
        let _ = writeln!(err, "warning: the first set is not affine; only direct comparison applies");
    }
    let dyk = run_dykstra(a, b, &spec.z, spec.stop)?;
    let map = run_map(a, b, &spec.z, spec.stop)?;
    write!(out, "{}", render_comparison(&dyk, &map, a_affine, args.compare_tol)?).map_err(io_err)?;
    let capped = [&dyk, &map].iter().any(|t| t.termination == Termination::MaxIterations);
    Ok(if capped { EXIT_MAX_ITER } else { EXIT_OK })
}

fn cmd_presets(out: &mut dyn Write) -> Result<i32> {
    for p in &PRESETS {
        writeln!(out, "{:<20} {}", p.name, p.description).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

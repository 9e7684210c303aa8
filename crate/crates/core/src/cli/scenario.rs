//! Scenario files and the preset registry.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{Point, SetDescriptor, Vec2};
use crate::solvers::Stop;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmChoice {
    Dykstra,
    Map,
    #[default]
    Both,
}

/// Where to write one run's artifacts.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<PathBuf>,
}

/// A complete run description: two sets (projected onto in order), a start
/// point, the algorithm(s), a stopping rule and output files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub sets: [SetDescriptor; 2],
    pub z: Point,
    #[serde(default)]
    pub algorithm: AlgorithmChoice,
    #[serde(default)]
    pub stop: Stop,
    #[serde(default)]
    pub outputs: Vec<OutputSpec>,
}

impl ScenarioSpec {
    pub fn new(a: SetDescriptor, b: SetDescriptor, z: impl Into<Point>) -> Self {
        Self {
            sets: [a, b],
            z: z.into(),
            algorithm: AlgorithmChoice::Both,
            stop: Stop::default(),
            outputs: Vec::new(),
        }
    }

    pub fn with_algorithm(mut self, algorithm: AlgorithmChoice) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.sets {
            s.validate()?;
            self.z.ensure_dim(s.dim())?;
        }
        if !self.z.is_finite() {
            return Err(Error::NonFinite("z"));
        }
        self.stop.validate()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self =
            serde_json::from_str(s).map_err(|e| Error::Usage(format!("bad scenario JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }
}

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> ScenarioSpec,
}

impl Preset {
    pub fn scenario(&self) -> ScenarioSpec {
        (self.build)()
    }
}

fn line_square(z: Vec2) -> ScenarioSpec {
    let line = SetDescriptor::line(Vec2::new(0.0, 1.0), Vec2::new(0.6, 0.8)).expect("valid line");
    ScenarioSpec::new(line, SetDescriptor::square(), z)
}

pub const PRESETS: [Preset; 8] = [
    Preset {
        name: "quadrant-halfspace",
        description: "lower half-plane vs {x1+x2 <= 0} from (1,1): MAP stops at (1/2,-1/2), Dykstra reaches (0,0)",
        build: || {
            let a = SetDescriptor::Box {
                lo: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
                hi: Vec2::new(f64::INFINITY, 0.0),
            };
            let b = SetDescriptor::Halfspace {
                normal: Vec2::new(1.0, 1.0),
                offset: 0.0,
            };
            ScenarioSpec::new(a, b, Vec2::new(1.0, 1.0))
        },
    },
    Preset {
        name: "two-intervals",
        description: "[0,inf) vs [1,inf) from z=-1: exact solution without the one-step predicate",
        build: || {
            ScenarioSpec::new(
                SetDescriptor::Interval { lo: 0.0, hi: f64::INFINITY },
                SetDescriptor::Interval { lo: 1.0, hi: f64::INFINITY },
                -1.0,
            )
        },
    },
    Preset {
        name: "cone-ball",
        description: "orthant then unit disc from (2,-1): P_B P_K z is the answer after one step",
        build: || {
            let ball = SetDescriptor::Ball {
                center: Vec2::ZERO,
                radius: 1.0,
            };
            ScenarioSpec::new(SetDescriptor::Orthant, ball, Vec2::new(2.0, -1.0))
        },
    },
    Preset {
        name: "order-matters",
        description: "square first, then the line x1+x2=1, from (-2,-1): MAP ends at (1/2,1/2), the solution is (0,1)",
        build: || {
            let line = SetDescriptor::line_through(Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0))
                .expect("valid line");
            ScenarioSpec::new(SetDescriptor::square(), line, Vec2::new(-2.0, -1.0))
        },
    },
    Preset {
        name: "rapid",
        description: "line vs square, P_A z inside the square: one step suffices",
        build: || line_square(Vec2::new(0.2, 0.5)),
    },
    Preset {
        name: "blue",
        description: "line vs square, P_A z above the top edge: Dykstra and MAP share main sequences",
        build: || line_square(Vec2::new(-0.5, 1.375)),
    },
    Preset {
        name: "stall-demo",
        description: "line vs square, P_A z beyond the corner: b_n sits at (-1,1) for 3 steps",
        build: || line_square(Vec2::new(-2.0, 2.5)),
    },
    Preset {
        name: "parallel",
        description: "horizontal line x2=1/2 vs square: exact after one step",
        build: || {
            let line =
                SetDescriptor::line(Vec2::new(0.0, 0.5), Vec2::new(0.0, 1.0)).expect("valid line");
            ScenarioSpec::new(line, SetDescriptor::square(), Vec2::new(2.0, -1.0))
        },
    },
];

pub fn preset(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        Error::Usage(format!("unknown preset {name:?}; known: {}", names.join(", ")))
    })
}

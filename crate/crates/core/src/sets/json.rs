//! Canonical JSON encoding of [`SetDescriptor`].
//!
//! `{"kind": "box"|"line"|"halfspace"|"ball"|"orthant"|"interval", ...}` with
//! unbounded ends written as the strings `"inf"` / `"-inf"`.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{SetDescriptor, Vec2};
use crate::error::Error;

/// A real number that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(super) struct ExtReal(pub f64);

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number or \"inf\" / \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                Ok(ExtReal(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
                match v {
                    "inf" | "+inf" => Ok(ExtReal(f64::INFINITY)),
                    "-inf" => Ok(ExtReal(f64::NEG_INFINITY)),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        d.deserialize_any(ExtVisitor)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub(super) enum RawSet {
    Box { lo: [ExtReal; 2], hi: [ExtReal; 2] },
    Line { u: Vec2, v: Vec2 },
    Halfspace { normal: Vec2, offset: f64 },
    Ball { center: Vec2, radius: f64 },
    Orthant {},
    Interval { lo: ExtReal, hi: ExtReal },
}

impl From<SetDescriptor> for RawSet {
    fn from(s: SetDescriptor) -> Self {
        match s {
            SetDescriptor::Box { lo, hi } => RawSet::Box {
                lo: [ExtReal(lo.x1), ExtReal(lo.x2)],
                hi: [ExtReal(hi.x1), ExtReal(hi.x2)],
            },
            SetDescriptor::Line { u, v } => RawSet::Line { u, v },
            SetDescriptor::Halfspace { normal, offset } => RawSet::Halfspace { normal, offset },
            SetDescriptor::Ball { center, radius } => RawSet::Ball { center, radius },
            SetDescriptor::Orthant => RawSet::Orthant {},
            SetDescriptor::Interval { lo, hi } => RawSet::Interval {
                lo: ExtReal(lo),
                hi: ExtReal(hi),
            },
        }
    }
}

impl TryFrom<RawSet> for SetDescriptor {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self, Error> {
        match raw {
            RawSet::Box { lo, hi } => {
                SetDescriptor::boxed(Vec2::new(lo[0].0, lo[1].0), Vec2::new(hi[0].0, hi[1].0))
            }
            // A stored unit normal passes through unchanged; anything else is normalized.
            RawSet::Line { u, v } => {
                let unit = SetDescriptor::Line { u, v };
                if unit.validate().is_ok() {
                    Ok(unit)
                } else {
                    SetDescriptor::line(u, v)
                }
            }
            RawSet::Halfspace { normal, offset } => SetDescriptor::halfspace(normal, offset),
            RawSet::Ball { center, radius } => SetDescriptor::ball(center, radius),
            RawSet::Orthant {} => Ok(SetDescriptor::Orthant),
            RawSet::Interval { lo, hi } => SetDescriptor::interval(lo.0, hi.0),
        }
    }
}

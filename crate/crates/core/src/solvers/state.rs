use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sets::{Point, SetDescriptor};

/// Dykstra iteration state `(n, a_n, b_n, p_n, q_n)`.
///
/// `a` is undefined at `n = 0`, where `b = z` and `p = q = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DykstraState {
    pub n: usize,
    pub a: Option<Point>,
    pub b: Point,
    pub p: Point,
    pub q: Point,
}

impl DykstraState {
    pub fn initial(z: Point) -> Self {
        let zero = Point::zero(z.dim());
        Self {
            n: 0,
            a: None,
            b: z,
            p: zero,
            q: zero,
        }
    }

    /// One step: `a = P_A(b + p)`, `p' = b + p - a`, `b' = P_B(a + q)`,
    /// `q' = a + q - b'`.
    pub fn step(&self, a_set: &SetDescriptor, b_set: &SetDescriptor) -> Result<Self> {
        let a = a_set.project(&(self.b + self.p))?;
        let p = self.b + self.p - a;
        let b = b_set.project(&(a + self.q))?;
        let q = a + self.q - b;
        Ok(Self {
            n: self.n + 1,
            a: Some(a),
            b,
            p,
            q,
        })
    }

    /// `|b_n - a_n|`, or `None` at `n = 0`.
    pub fn gap(&self) -> Option<f64> {
        self.a.map(|a| self.b.dist(&a))
    }
}

pub fn dykstra_step(
    state: &DykstraState,
    a_set: &SetDescriptor,
    b_set: &SetDescriptor,
) -> Result<DykstraState> {
    state.step(a_set, b_set)
}

/// MAP state `(n, c_n)`; odd indices come from `P_A`, even ones from `P_B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapState {
    pub n: usize,
    pub c: Point,
}

impl MapState {
    pub fn initial(z: Point) -> Self {
        Self { n: 0, c: z }
    }

    pub fn step(&self, a_set: &SetDescriptor, b_set: &SetDescriptor) -> Result<Self> {
        let n = self.n + 1;
        let set = if n % 2 == 1 { a_set } else { b_set };
        Ok(Self {
            n,
            c: set.project(&self.c)?,
        })
    }
}

pub fn map_step(state: &MapState, a_set: &SetDescriptor, b_set: &SetDescriptor) -> Result<MapState> {
    state.step(a_set, b_set)
}

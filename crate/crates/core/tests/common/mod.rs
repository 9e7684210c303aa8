#![allow(dead_code)]

use dykstra::sets::{Point, SetDescriptor, Vec2};
use dykstra::solvers::{dykstra_step, DykstraState};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub const VERTEX: Vec2 = Vec2 { x1: -1.0, x2: 1.0 };

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Canonical line data: `u = (u1, 1)` and a unit `v` in the open positive quadrant.
#[derive(Clone, Copy, Debug)]
pub struct Canonical {
    pub u: Vec2,
    pub v: Vec2,
}

impl Canonical {
    pub fn sample(rng: &mut impl Rng, u1: (f64, f64), v1: (f64, f64)) -> Self {
        let u = Vec2::new(rng.gen_range(u1.0..u1.1), 1.0);
        let c = rng.gen_range(v1.0..v1.1);
        let line = SetDescriptor::line(u, Vec2::new(c, (1.0f64 - c * c).sqrt())).unwrap();
        let SetDescriptor::Line { v, .. } = line else { unreachable!() };
        Self { u, v }
    }

    pub fn line(&self) -> SetDescriptor {
        SetDescriptor::Line { u: self.u, v: self.v }
    }

    /// Point of the line with first coordinate `x1`.
    pub fn on_line(&self, x1: f64) -> Vec2 {
        let t = (self.u.x1 - x1) / self.v.x2;
        self.u + Vec2::new(-self.v.x2, self.v.x1) * t
    }

    /// `on_line(x1)` pushed off the line along `v`, so that `P_A z` stays near it.
    pub fn start(&self, rng: &mut impl Rng, x1: f64) -> Vec2 {
        self.on_line(x1) + self.v * rng.gen_range(-2.0..2.0)
    }

    /// Far end of the chord that starts at `u`.
    pub fn chord_end_x1(&self) -> f64 {
        let t = ((1.0 - self.u.x1) / self.v.x2).min(2.0 / self.v.x1);
        self.u.x1 + self.v.x2 * t
    }
}

/// Largest violation of the two conservation identities
/// `a_n + p_n = b_{n-1} + p_{n-1}` and `b_n + q_n = a_n + q_{n-1}`.
pub fn conservation_gap(prev: &DykstraState, next: &DykstraState) -> f64 {
    let a = next.a.expect("successor state has a_n");
    let first = (a + next.p).max_abs_diff(&(prev.b + prev.p));
    let second = (next.b + next.q).max_abs_diff(&(a + prev.q));
    first.max(second)
}

/// Steps Dykstra, tracking the worst conservation gap seen.
pub struct Stepper<'a> {
    pub a: &'a SetDescriptor,
    pub b: &'a SetDescriptor,
    pub state: DykstraState,
    pub worst_conservation: f64,
}

impl<'a> Stepper<'a> {
    pub fn new(a: &'a SetDescriptor, b: &'a SetDescriptor, z: Point) -> Self {
        Self {
            a,
            b,
            state: DykstraState::initial(z),
            worst_conservation: 0.0,
        }
    }

    pub fn step(&mut self) -> DykstraState {
        let next = dykstra_step(&self.state, self.a, self.b).unwrap();
        self.worst_conservation = self.worst_conservation.max(conservation_gap(&self.state, &next));
        self.state = next;
        next
    }
}

pub fn v2(p: &Point) -> Vec2 {
    p.as_vec2().expect("planar point")
}

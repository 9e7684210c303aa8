//! Closed-form Dykstra trace for `A = [0, inf)`, `B = [1, inf)` on the line.

use crate::error::{Error, Result};
use crate::sets::{Point, SetDescriptor};
use crate::solvers::DykstraState;

fn record(k: usize, a: f64, b: f64, p: f64, q: f64) -> DykstraState {
    DykstraState {
        n: k,
        a: Some(Point::R1(a)),
        b: Point::R1(b),
        p: Point::R1(p),
        q: Point::R1(q),
    }
}

/// Records `0..=len` of Dykstra's run from `z`.
///
/// For `z >= 1` the run is constant. For `z < 1`, with `n = -floor(z)`:
///
/// * `k <= n`: `a = 0`, `p = z + k - 1`, `b = 1`, `q = -k`;
/// * `k = n + 1`: `a = z + n`, `p = 0`, `b = 1`, `q = z - 1`;
/// * `k >= n + 2`: `a = b = 1`, `p = 0`, `q = z - 1`.
///
/// The outer normal `q` keeps the value `z - 1` once the run has settled; it
/// does not return to zero.
pub fn two_interval_trace(
    a_set: &SetDescriptor,
    b_set: &SetDescriptor,
    z: f64,
    len: usize,
) -> Result<Vec<DykstraState>> {
    let expected_a = SetDescriptor::Interval { lo: 0.0, hi: f64::INFINITY };
    let expected_b = SetDescriptor::Interval { lo: 1.0, hi: f64::INFINITY };
    if *a_set != expected_a || *b_set != expected_b {
        return Err(Error::Unsupported(
            "closed form covers only A = [0, inf), B = [1, inf)".into(),
        ));
    }
    if !z.is_finite() {
        return Err(Error::NonFinite("z"));
    }

    let mut out = Vec::with_capacity(len + 1);
    out.push(DykstraState::initial(Point::R1(z)));
    if z >= 1.0 {
        out.extend((1..=len).map(|k| record(k, z, z, 0.0, 0.0)));
        return Ok(out);
    }
    let n = -z.floor();
    for k in 1..=len {
        let kf = k as f64;
        let r = if kf <= n {
            record(k, 0.0, 1.0, z + kf - 1.0, -kf)
        } else if kf == n + 1.0 {
            record(k, z + n, 1.0, 0.0, z - 1.0)
        } else {
            record(k, 1.0, 1.0, 0.0, z - 1.0)
        };
        out.push(r);
    }
    Ok(out)
}

//! Projection onto the intersection of the nonnegative orthant and a centred disc.

use crate::error::{Error, Result};
use crate::sets::{SetDescriptor, Vec2};

/// `P_{B∩K} z = P_B(P_K z)` for the orthant `K` and a disc `B` centred at
/// the origin. The reverse composition is not a projection onto `B ∩ K`.
pub fn cone_ball_projection(k: &SetDescriptor, ball: &SetDescriptor, z: Vec2) -> Result<Vec2> {
    if *k != SetDescriptor::Orthant {
        return Err(Error::Unsupported(format!("expected the orthant, got a {}", k.kind())));
    }
    match *ball {
        SetDescriptor::Ball { center, .. } if center == Vec2::ZERO => {}
        SetDescriptor::Ball { center, .. } => {
            return Err(Error::Unsupported(format!("ball centre {center} is not the origin")))
        }
        _ => return Err(Error::Unsupported(format!("expected a ball, got a {}", ball.kind()))),
    }
    ball.validate()?;
    if !z.is_finite() {
        return Err(Error::NonFinite("z"));
    }
    Ok(ball.project_vec2(k.project_vec2(z)))
}

//! User and drone motion models.
//!
//! Users follow a random waypoint model confined to their cell: walk toward a
//! uniformly drawn destination at a uniformly drawn speed, redraw on arrival,
//! zero pause time. Drones move a fixed `v * dt` along a chosen heading and
//! are clamped to their own cell square.

use rand::Rng;

use crate::geometry::{ground_distance, CellBounds, DronePose, GroundPoint};

/// Random-waypoint state of one user.
#[derive(Debug, Clone, Copy)]
pub struct RwpState {
    pub position: GroundPoint,
    pub waypoint: GroundPoint,
    pub speed_mps: f64,
}

fn uniform_point<R: Rng + ?Sized>(rng: &mut R, bounds: &CellBounds) -> GroundPoint {
    GroundPoint::new(
        rng.gen_range(bounds.min.x..=bounds.max.x),
        rng.gen_range(bounds.min.y..=bounds.max.y),
    )
}

/// Fresh RWP state: uniform position, uniform waypoint, uniform speed.
pub fn rwp_init<R: Rng + ?Sized>(
    rng: &mut R,
    bounds: &CellBounds,
    speed_range: (f64, f64),
) -> RwpState {
    RwpState {
        position: uniform_point(rng, bounds),
        waypoint: uniform_point(rng, bounds),
        speed_mps: rng.gen_range(speed_range.0..=speed_range.1),
    }
}

/// Advance one RWP step of `dt` seconds. Overshoot is clipped to the
/// waypoint, which then triggers a redraw of waypoint and speed (zero pause).
pub fn rwp_step<R: Rng + ?Sized>(
    state: &mut RwpState,
    rng: &mut R,
    dt: f64,
    bounds: &CellBounds,
    speed_range: (f64, f64),
) {
    debug_assert!(dt > 0.0);
    let dist = ground_distance(state.position, state.waypoint);
    let step = state.speed_mps * dt;
    if dist <= step {
        state.position = state.waypoint;
        state.waypoint = uniform_point(rng, bounds);
        state.speed_mps = rng.gen_range(speed_range.0..=speed_range.1);
    } else {
        let f = step / dist;
        state.position = GroundPoint::new(
            state.position.x + (state.waypoint.x - state.position.x) * f,
            state.position.y + (state.waypoint.y - state.position.y) * f,
        );
    }
}

/// Advance a drone `v * dt` metres along `heading`, clamped to its cell.
/// Height is unchanged; the heading is stored for turning-angle statistics.
pub fn drone_step(
    pose: &DronePose,
    heading_rad: f64,
    v_mps: f64,
    dt: f64,
    bounds: &CellBounds,
) -> DronePose {
    debug_assert!(v_mps >= 0.0 && dt > 0.0);
    let step = v_mps * dt;
    let target = GroundPoint::new(
        pose.ground.x + step * heading_rad.cos(),
        pose.ground.y + step * heading_rad.sin(),
    );
    DronePose::new(bounds.clamp(target), pose.height_m, heading_rad)
}

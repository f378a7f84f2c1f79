//! Per-slot heading selection for each drone.
//!
//! Every slot, a drone with at least one active user examines `2M` candidate
//! directions spaced `angle_step` apart and moves `v * dt` along the best one
//! (there is no stay-in-place candidate; drones hover only when they have no
//! pending request). Two scoring criteria are provided:
//!
//! * `MaxSnr` ranks candidates by the summed expected spectral efficiency of
//!   the drone's own active users, ignoring all other drones.
//! * `MaxSlr` ranks candidates by summed expected received signal over
//!   leakage: the total expected power the candidate position would deposit
//!   onto active users of neighbor cells within the interference distance,
//!   regularized by the full-band noise floor so that an interference-free
//!   neighborhood degenerates gracefully to signal ranking.
//!
//! A brute-force centralized controller that jointly maximizes system SE by
//! exhaustive search is included as a test oracle for tiny networks only; its
//! cost grows as `(2M)^N`.

use thiserror::Error;

use crate::channel::{expected_rx_power_w, expected_se, ChannelParams};
use crate::geometry::{ground_distance, CellBounds, DronePose, GroundPoint};

/// Heading selection criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeadingPolicy {
    Hover,
    MaxSnr,
    MaxSlr,
}

impl std::fmt::Display for HeadingPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HeadingPolicy::Hover => "hover",
            HeadingPolicy::MaxSnr => "max_snr",
            HeadingPolicy::MaxSlr => "max_slr",
        })
    }
}

/// What one drone knows about a neighbor cell when scoring leakage.
#[derive(Debug, Clone)]
pub struct NeighborCell {
    pub drone_ground: GroundPoint,
    pub active_users: Vec<GroundPoint>,
}

/// Snapshot of the neighbor cells within the interference distance of the
/// deciding drone's cell (center-to-center), taken at slot start.
#[derive(Debug, Clone, Default)]
pub struct NeighborSnapshot {
    pub cells: Vec<NeighborCell>,
}

impl NeighborSnapshot {
    pub fn empty() -> Self {
        Self::default()
    }
}

/// The `2M` candidate positions reachable in one slot, clamped to the cell.
/// Candidates are returned in ascending heading order starting at 0.
pub fn candidate_positions(
    pose: &DronePose,
    v_mps: f64,
    dt: f64,
    angle_step_rad: f64,
    bounds: &CellBounds,
) -> Vec<(f64, GroundPoint)> {
    let count = (std::f64::consts::TAU / angle_step_rad).round() as usize;
    debug_assert!(count >= 2);
    let step = v_mps * dt;
    (0..count)
        .map(|i| {
            let heading = i as f64 * angle_step_rad;
            let target = GroundPoint::new(
                pose.ground.x + step * heading.cos(),
                pose.ground.y + step * heading.sin(),
            );
            (heading, bounds.clamp(target))
        })
        .collect()
}

/// Interference-blind score: summed expected SE of the drone's own active
/// users from `candidate`, with zero interference.
pub fn score_snr(
    candidate: GroundPoint,
    height_m: f64,
    own_active_users: &[GroundPoint],
    params: &ChannelParams,
) -> f64 {
    own_active_users
        .iter()
        .map(|&u| expected_se(params, height_m, ground_distance(candidate, u), 0.0, 1.0))
        .sum()
}

/// Total expected power `candidate` would deposit onto active users of
/// neighbor cells (the leakage), in watt.
pub fn leakage_w(
    candidate: GroundPoint,
    height_m: f64,
    neighbors: &NeighborSnapshot,
    params: &ChannelParams,
) -> f64 {
    neighbors
        .cells
        .iter()
        .flat_map(|c| c.active_users.iter())
        .map(|&u| expected_rx_power_w(params, height_m, ground_distance(candidate, u)))
        .sum()
}

/// Signal-to-leakage score: summed expected received power of the drone's
/// own active users over leakage plus the full-band noise floor.
pub fn score_slr(
    candidate: GroundPoint,
    height_m: f64,
    own_active_users: &[GroundPoint],
    neighbors: &NeighborSnapshot,
    params: &ChannelParams,
) -> f64 {
    let leak = leakage_w(candidate, height_m, neighbors, params);
    let denom = leak + params.full_band_noise_w();
    own_active_users
        .iter()
        .map(|&u| expected_rx_power_w(params, height_m, ground_distance(candidate, u)) / denom)
        .sum()
}

/// Choose a heading under `policy`, or `None` to hover.
///
/// All policies hover when the drone has no active users. Ties between
/// equal-scoring candidates resolve to the smallest heading angle.
#[allow(clippy::too_many_arguments)]
pub fn decide(
    policy: HeadingPolicy,
    pose: &DronePose,
    v_mps: f64,
    dt: f64,
    angle_step_rad: f64,
    own_active_users: &[GroundPoint],
    neighbors: &NeighborSnapshot,
    params: &ChannelParams,
    bounds: &CellBounds,
) -> Option<f64> {
    if own_active_users.is_empty() || policy == HeadingPolicy::Hover {
        return None;
    }
    let candidates = candidate_positions(pose, v_mps, dt, angle_step_rad, bounds);
    let mut best: Option<(f64, f64)> = None;
    for (heading, point) in candidates {
        let score = match policy {
            HeadingPolicy::MaxSnr => score_snr(point, pose.height_m, own_active_users, params),
            HeadingPolicy::MaxSlr => {
                score_slr(point, pose.height_m, own_active_users, neighbors, params)
            }
            HeadingPolicy::Hover => unreachable!(),
        };
        // strict improvement keeps the smallest heading on ties
        if best.map_or(true, |(_, s)| score > s) {
            best = Some((heading, score));
        }
    }
    best.map(|(heading, _)| heading)
}

// ---------------------------------------------------------------------------
// Centralized exhaustive oracle (test-scale only)
// ---------------------------------------------------------------------------

/// A tiny multi-cell scene for the exhaustive joint search.
#[derive(Debug, Clone)]
pub struct OracleScene {
    pub drones: Vec<DronePose>,
    pub cell_bounds: Vec<CellBounds>,
    /// Active-user positions per cell, same indexing as `drones`.
    pub active_users: Vec<Vec<GroundPoint>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("centralized oracle handles at most 3 drones, got {0}")]
    TooManyDrones(usize),
    #[error("centralized oracle handles at most 8 candidate directions, got {0}")]
    TooManyCandidates(usize),
}

/// Joint headings and achieved objective of the exhaustive search.
#[derive(Debug, Clone)]
pub struct JointDecision {
    pub headings: Vec<f64>,
    pub system_se: f64,
}

/// System objective shared by the oracle and the acceptance checks: the mean
/// over cells with active users of the per-cell mean expected SE, with
/// interference from every other transmitting drone within `kappa_m` of the
/// victim user. Cells without active users contribute no term.
pub fn system_expected_se(
    drone_grounds: &[GroundPoint],
    height_m: f64,
    active_users: &[Vec<GroundPoint>],
    params: &ChannelParams,
    kappa_m: f64,
) -> f64 {
    let transmitting: Vec<bool> = active_users.iter().map(|u| !u.is_empty()).collect();
    let mut cell_means = Vec::new();
    for (n, users) in active_users.iter().enumerate() {
        if users.is_empty() {
            continue;
        }
        let mut sum = 0.0;
        for &u in users {
            let mut interference = 0.0;
            for (m, &g) in drone_grounds.iter().enumerate() {
                if m == n || !transmitting[m] {
                    continue;
                }
                let r = ground_distance(u, g);
                if r <= kappa_m {
                    interference += expected_rx_power_w(params, height_m, r);
                }
            }
            let r_serving = ground_distance(u, drone_grounds[n]);
            sum += expected_se(params, height_m, r_serving, interference, 1.0);
        }
        cell_means.push(sum / users.len() as f64);
    }
    if cell_means.is_empty() {
        0.0
    } else {
        cell_means.iter().sum::<f64>() / cell_means.len() as f64
    }
}

/// Exhaustive joint argmax of [`system_expected_se`] over all `(2M)^N`
/// heading combinations. Guarded to desk-scale instances.
pub fn centralized_oracle(
    scene: &OracleScene,
    params: &ChannelParams,
    v_mps: f64,
    dt: f64,
    angle_step_rad: f64,
    kappa_m: f64,
) -> Result<JointDecision, OracleError> {
    let n = scene.drones.len();
    if n > 3 {
        return Err(OracleError::TooManyDrones(n));
    }
    let per_drone: Vec<Vec<(f64, GroundPoint)>> = scene
        .drones
        .iter()
        .zip(&scene.cell_bounds)
        .map(|(pose, bounds)| candidate_positions(pose, v_mps, dt, angle_step_rad, bounds))
        .collect();
    let m = per_drone.first().map_or(0, |c| c.len());
    if m > 8 {
        return Err(OracleError::TooManyCandidates(m));
    }

    let height = scene.drones.first().map_or(10.0, |d| d.height_m);
    let mut idx = vec![0usize; n];
    let mut best: Option<(Vec<f64>, f64)> = None;
    loop {
        let grounds: Vec<GroundPoint> = idx
            .iter()
            .enumerate()
            .map(|(d, &i)| per_drone[d][i].1)
            .collect();
        let se = system_expected_se(&grounds, height, &scene.active_users, params, kappa_m);
        if best.as_ref().map_or(true, |(_, s)| se > *s) {
            let headings = idx
                .iter()
                .enumerate()
                .map(|(d, &i)| per_drone[d][i].0)
                .collect();
            best = Some((headings, se));
        }
        // odometer over the joint index space
        let mut carry = true;
        for slot in idx.iter_mut() {
            if !carry {
                break;
            }
            *slot += 1;
            if *slot == m {
                *slot = 0;
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    let (headings, system_se) = best.expect("at least one joint combination");
    Ok(JointDecision {
        headings,
        system_se,
    })
}

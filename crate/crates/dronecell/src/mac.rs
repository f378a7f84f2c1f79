//! Per-slot bandwidth allocation among a cell's active users.
//!
//! FDMA divides the whole band equally among all active users; when a
//! transmission finishes the released share is re-split at the next slot.
//! TDMA devotes the whole band to the single active user with the strongest
//! expected received signal, ties broken by lowest user id.

use crate::channel::{expected_rx_power_w, ChannelParams};
use crate::geometry::{ground_distance, DronePose, GroundPoint};

/// Bandwidth allocation for one cell and slot, in hertz per user.
/// Users absent from the map are not served this slot.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Allocation {
    entries: Vec<(usize, f64)>,
}

impl Allocation {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Served users with their bandwidth, ascending by user id.
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn bandwidth_of(&self, user_id: usize) -> f64 {
        self.entries
            .iter()
            .find(|(u, _)| *u == user_id)
            .map(|(_, b)| *b)
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, b)| b).sum()
    }
}

/// Which multiple-access scheme a scenario uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MacScheme {
    Fdma,
    Tdma,
}

impl std::fmt::Display for MacScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MacScheme::Fdma => "fdma",
            MacScheme::Tdma => "tdma",
        })
    }
}

/// Equal split of `bandwidth_hz` over the active users.
pub fn fdma_allocate(active: &[usize], bandwidth_hz: f64) -> Allocation {
    if active.is_empty() {
        return Allocation::default();
    }
    let share = bandwidth_hz / active.len() as f64;
    Allocation {
        entries: active.iter().map(|&u| (u, share)).collect(),
    }
}

/// Full band to the active user with the highest expected received power
/// (LoS/NLoS mixture at full band), ties to the lowest user id.
///
/// `positions` maps each user id in `active` to its ground position.
pub fn tdma_select(
    active: &[usize],
    drone: &DronePose,
    positions: &dyn Fn(usize) -> GroundPoint,
    params: &ChannelParams,
) -> Allocation {
    let mut best: Option<(usize, f64)> = None;
    for &u in active {
        let r = ground_distance(positions(u), drone.ground);
        let p = expected_rx_power_w(params, drone.height_m, r);
        let better = match best {
            None => true,
            // strict improvement only: earlier (lower) ids win ties
            Some((_, bp)) => p > bp,
        };
        if better {
            best = Some((u, p));
        }
    }
    match best {
        None => Allocation::default(),
        Some((u, _)) => Allocation {
            entries: vec![(u, params.bandwidth_hz)],
        },
    }
}

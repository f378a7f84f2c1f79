//! Per-user downlink traffic state machine (3GPP FTP-style).
//!
//! A user alternates between reading (idle for an exponentially distributed
//! interval with mean `lambda`) and actively downloading a fixed-size data
//! package. Requests arriving mid-slot take effect at the next slot boundary;
//! `advance` is therefore called once per user at each slot start (with zero
//! delivered bits) and once after transmission with the bits delivered during
//! the slot.

use rand::Rng;

/// One data package download.
#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub user_id: usize,
    pub cell_id: usize,
    pub size_bits: f64,
    pub remaining_bits: f64,
    pub requested_at: f64,
    pub completed_at: Option<f64>,
}

/// Traffic phase of a single user.
#[derive(Debug, Clone, PartialEq)]
pub enum Phase {
    Reading { until: f64 },
    Active(Request),
}

/// Exponential reading time with mean `lambda_s`, from a uniform draw.
pub fn reading_time_from_uniform(u: f64, lambda_s: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&u) && lambda_s > 0.0);
    -lambda_s * (1.0 - u).ln()
}

/// Draw an exponential reading time with mean `lambda_s`.
pub fn draw_reading_time<R: Rng + ?Sized>(rng: &mut R, lambda_s: f64) -> f64 {
    reading_time_from_uniform(rng.gen::<f64>(), lambda_s)
}

/// Traffic state for every user in the network.
#[derive(Debug, Clone)]
pub struct TrafficState {
    phases: Vec<Phase>,
    cells: Vec<usize>,
    mean_reading_time_s: f64,
    request_bits: f64,
}

impl TrafficState {
    /// All users start in the reading phase with independent exponential
    /// draws from `t = 0`, avoiding a synchronized request burst at start.
    pub fn new<R: Rng + ?Sized>(
        user_cells: Vec<usize>,
        mean_reading_time_s: f64,
        request_bits: f64,
        rng: &mut R,
    ) -> Self {
        assert!(mean_reading_time_s > 0.0 && request_bits > 0.0);
        let phases = user_cells
            .iter()
            .map(|_| Phase::Reading {
                until: draw_reading_time(rng, mean_reading_time_s),
            })
            .collect();
        Self {
            phases,
            cells: user_cells,
            mean_reading_time_s,
            request_bits,
        }
    }

    pub fn user_count(&self) -> usize {
        self.phases.len()
    }

    pub fn phase(&self, user_id: usize) -> &Phase {
        &self.phases[user_id]
    }

    pub fn is_active(&self, user_id: usize) -> bool {
        matches!(self.phases[user_id], Phase::Active(_))
    }

    pub fn cell_of(&self, user_id: usize) -> usize {
        self.cells[user_id]
    }

    /// Advance one user's state machine.
    ///
    /// With `delivered_bits > 0` the user must be active; its request shrinks
    /// and, on reaching zero, completes at `now` (the completed request is
    /// returned) and the user starts a fresh reading interval. With zero
    /// delivered bits, a reading user whose interval has elapsed becomes
    /// active with a full-size request stamped at the actual arrival time.
    pub fn advance<R: Rng + ?Sized>(
        &mut self,
        user_id: usize,
        now: f64,
        delivered_bits: f64,
        rng: &mut R,
    ) -> Option<Request> {
        assert!(delivered_bits >= 0.0);
        match &mut self.phases[user_id] {
            Phase::Reading { until } => {
                assert!(
                    delivered_bits == 0.0,
                    "delivered {delivered_bits} bits to reading user {user_id}"
                );
                if *until <= now {
                    let requested_at = *until;
                    self.phases[user_id] = Phase::Active(Request {
                        user_id,
                        cell_id: self.cells[user_id],
                        size_bits: self.request_bits,
                        remaining_bits: self.request_bits,
                        requested_at,
                        completed_at: None,
                    });
                }
                None
            }
            Phase::Active(req) => {
                if delivered_bits == 0.0 {
                    return None;
                }
                req.remaining_bits = (req.remaining_bits - delivered_bits).max(0.0);
                if req.remaining_bits > 0.0 {
                    return None;
                }
                req.completed_at = Some(now);
                let done = req.clone();
                self.phases[user_id] = Phase::Reading {
                    until: now + draw_reading_time(rng, self.mean_reading_time_s),
                };
                Some(done)
            }
        }
    }

    /// Users of `cell_id` currently in the active phase, ascending by id.
    pub fn active_set(&self, cell_id: usize) -> Vec<usize> {
        (0..self.phases.len())
            .filter(|&u| self.cells[u] == cell_id && self.is_active(u))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng() -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(7)
    }

    #[test]
    fn inverse_cdf_at_median() {
        // -lambda * ln(1 - 0.5) = 20 ln 2
        assert_relative_eq!(reading_time_from_uniform(0.5, 20.0), 13.86294361, epsilon = 1e-7);
    }

    #[test]
    fn sample_mean_near_lambda() {
        let mut r = rng();
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let t = draw_reading_time(&mut r, 20.0);
            assert!(t > 0.0);
            sum += t;
        }
        let mean = sum / n as f64;
        assert!((mean - 20.0).abs() < 0.5, "sample mean {mean}");
    }

    #[test]
    fn exact_finish_emits_completion_and_reads() {
        let mut r = rng();
        let mut st = TrafficState::new(vec![0], 20.0, 1e6, &mut r);
        st.phases[0] = Phase::Active(Request {
            user_id: 0,
            cell_id: 0,
            size_bits: 1e6,
            remaining_bits: 1e6,
            requested_at: 1.0,
            completed_at: None,
        });
        let done = st.advance(0, 2.0, 1e6, &mut r).expect("completion");
        assert_eq!(done.completed_at, Some(2.0));
        assert_eq!(done.remaining_bits, 0.0);
        assert!(matches!(st.phase(0), Phase::Reading { until } if *until > 2.0));
    }

    #[test]
    fn partial_delivery_keeps_user_active() {
        let mut r = rng();
        let mut st = TrafficState::new(vec![0], 20.0, 1e6, &mut r);
        st.phases[0] = Phase::Active(Request {
            user_id: 0,
            cell_id: 0,
            size_bits: 1e6,
            remaining_bits: 1e6,
            requested_at: 0.0,
            completed_at: None,
        });
        assert!(st.advance(0, 0.1, 4e5, &mut r).is_none());
        match st.phase(0) {
            Phase::Active(req) => assert_relative_eq!(req.remaining_bits, 6e5),
            _ => panic!("should stay active"),
        }
    }

    #[test]
    fn elapsed_reading_activates_with_arrival_timestamp() {
        let mut r = rng();
        let mut st = TrafficState::new(vec![3], 20.0, 16_777_216.0, &mut r);
        st.phases[0] = Phase::Reading { until: 12.0 };
        assert!(st.advance(0, 12.1, 0.0, &mut r).is_none());
        match st.phase(0) {
            Phase::Active(req) => {
                assert_eq!(req.size_bits, 16_777_216.0);
                assert_eq!(req.requested_at, 12.0);
                assert_eq!(req.cell_id, 3);
            }
            _ => panic!("should be active"),
        }
    }

    #[test]
    fn reading_not_yet_elapsed_stays_reading() {
        let mut r = rng();
        let mut st = TrafficState::new(vec![0], 20.0, 1e6, &mut r);
        st.phases[0] = Phase::Reading { until: 12.0 };
        st.advance(0, 11.9, 0.0, &mut r);
        assert!(matches!(st.phase(0), Phase::Reading { .. }));
    }

    #[test]
    #[should_panic(expected = "reading user")]
    fn delivering_to_reading_user_panics() {
        let mut r = rng();
        let mut st = TrafficState::new(vec![0], 20.0, 1e6, &mut r);
        st.advance(0, 0.0, 100.0, &mut r);
    }

    #[test]
    fn active_set_is_sorted_and_filtered() {
        let mut r = rng();
        // users 0..6 alternate between cells 0 and 1
        let mut st = TrafficState::new(vec![0, 1, 0, 1, 0, 1], 20.0, 1e6, &mut r);
        assert!(st.active_set(0).is_empty());
        for u in [4, 0, 2] {
            st.phases[u] = Phase::Active(Request {
                user_id: u,
                cell_id: 0,
                size_bits: 1e6,
                remaining_bits: 1e6,
                requested_at: 0.0,
                completed_at: None,
            });
        }
        assert_eq!(st.active_set(0), vec![0, 2, 4]);
        assert!(st.active_set(1).is_empty());
        st.phases[1] = Phase::Active(Request {
            user_id: 1,
            cell_id: 1,
            size_bits: 1e6,
            remaining_bits: 1e6,
            requested_at: 0.0,
            completed_at: None,
        });
        assert_eq!(st.active_set(1), vec![1]);
    }

    #[test]
    fn transmission_time_positive_for_completions() {
        let mut r = rng();
        let mut st = TrafficState::new(vec![0], 5.0, 1000.0, &mut r);
        let mut t = 0.0;
        let mut completions = 0;
        for _ in 0..10_000 {
            st.advance(0, t, 0.0, &mut r);
            if st.is_active(0) {
                if let Some(done) = st.advance(0, t + 0.1, 400.0, &mut r) {
                    assert!(done.completed_at.unwrap() > done.requested_at);
                    completions += 1;
                }
            }
            t += 0.1;
        }
        assert!(completions > 10, "expected plenty of completions, got {completions}");
    }
}

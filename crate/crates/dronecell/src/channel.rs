//! Air-to-ground radio chain: LoS probability, path loss, received power,
//! noise, SNR, SINR, and the LoS/NLoS-averaged spectral efficiency.
//!
//! The propagation state of a link is probabilistic: a link of elevation
//! angle `theta = atan(h/r)` (in degrees) is line-of-sight with probability
//! `1 / (1 + alpha * exp(-beta * (theta - alpha)))` and non-line-of-sight
//! otherwise, each state with its own reference loss `A` (dB at 1 m) and
//! exponent `gamma`. All averages below weight the two states by these
//! probabilities rather than sampling them, which keeps simulation runs
//! deterministic given positions.

use crate::geometry::euclidean_distance;

/// Propagation state of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Los,
    Nlos,
}

/// Channel constants plus cached derived values.
///
/// `a_lin_*` caches `10^(-A/10)` and `noise_density_w_per_hz` caches
/// `N' = 10^((-174 + noise_figure)/10) * 1e-3` (watt per hertz).
#[derive(Debug, Clone, Copy)]
pub struct ChannelParams {
    pub alpha: f64,
    pub beta: f64,
    pub a_los_db: f64,
    pub a_nlos_db: f64,
    pub gamma_los: f64,
    pub gamma_nlos: f64,
    pub tx_power_w: f64,
    pub bandwidth_hz: f64,
    pub carrier_hz: f64,
    pub ue_noise_figure_db: f64,
    a_lin_los: f64,
    a_lin_nlos: f64,
    noise_density_w_per_hz: f64,
}

impl ChannelParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alpha: f64,
        beta: f64,
        a_los_db: f64,
        a_nlos_db: f64,
        gamma_los: f64,
        gamma_nlos: f64,
        tx_power_w: f64,
        bandwidth_hz: f64,
        carrier_hz: f64,
        ue_noise_figure_db: f64,
    ) -> Self {
        assert!(alpha > 0.0 && beta > 0.0, "LoS model constants must be positive");
        assert!(tx_power_w > 0.0 && bandwidth_hz > 0.0 && carrier_hz > 0.0);
        assert!(gamma_los > 0.0 && gamma_nlos > 0.0);
        if gamma_nlos < gamma_los {
            log::warn!(
                "gamma_nlos ({gamma_nlos}) < gamma_los ({gamma_los}): unusual environment"
            );
        }
        Self {
            alpha,
            beta,
            a_los_db,
            a_nlos_db,
            gamma_los,
            gamma_nlos,
            tx_power_w,
            bandwidth_hz,
            carrier_hz,
            ue_noise_figure_db,
            a_lin_los: 10f64.powf(-a_los_db / 10.0),
            a_lin_nlos: 10f64.powf(-a_nlos_db / 10.0),
            noise_density_w_per_hz: 10f64.powf((-174.0 + ue_noise_figure_db) / 10.0) * 1e-3,
        }
    }

    /// Urban-area defaults: 24 dBm transmit power, 10 MHz at 2 GHz, 9 dB UE
    /// noise figure, A = 41.1/33 dB, gamma = 2.09/3.75, alpha/beta 9.61/0.16.
    pub fn urban_defaults() -> Self {
        Self::new(
            9.61,
            0.16,
            41.1,
            33.0,
            2.09,
            3.75,
            dbm_to_watt(24.0),
            10e6,
            2e9,
            9.0,
        )
    }

    /// Noise power spectral density `N'` in watt/Hz.
    pub fn noise_density_w_per_hz(&self) -> f64 {
        self.noise_density_w_per_hz
    }

    /// Noise power over a bandwidth `b` in hertz.
    pub fn noise_w(&self, b_hz: f64) -> f64 {
        self.noise_density_w_per_hz * b_hz
    }

    /// Full-band noise floor `B * N'` in watt.
    pub fn full_band_noise_w(&self) -> f64 {
        self.noise_w(self.bandwidth_hz)
    }

    fn a_lin(&self, kind: PathKind) -> f64 {
        match kind {
            PathKind::Los => self.a_lin_los,
            PathKind::Nlos => self.a_lin_nlos,
        }
    }

    fn gamma(&self, kind: PathKind) -> f64 {
        match kind {
            PathKind::Los => self.gamma_los,
            PathKind::Nlos => self.gamma_nlos,
        }
    }

    fn a_db(&self, kind: PathKind) -> f64 {
        match kind {
            PathKind::Los => self.a_los_db,
            PathKind::Nlos => self.a_nlos_db,
        }
    }
}

pub fn dbm_to_watt(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0) * 1e-3
}

pub fn watt_to_dbm(w: f64) -> f64 {
    10.0 * (w / 1e-3).log10()
}

/// Elevation angle in degrees between the ground plane and the drone-user
/// ray; `r = 0` is treated as the overhead limit of 90 degrees.
pub fn elevation_angle_deg(h: f64, r: f64) -> f64 {
    debug_assert!(h > 0.0 && r >= 0.0);
    if r == 0.0 {
        90.0
    } else {
        (h / r).atan().to_degrees()
    }
}

/// Probability of a line-of-sight link at height `h` and ground distance `r`.
pub fn los_probability(params: &ChannelParams, h: f64, r: f64) -> f64 {
    let theta = elevation_angle_deg(h, r);
    1.0 / (1.0 + params.alpha * (-params.beta * (theta - params.alpha)).exp())
}

/// Path loss in dB at 3D distance `d` metres: `A + 10 * gamma * log10(d)`.
///
/// Distances below the 1 m reference are clamped to 1 m (the model is not
/// valid there).
pub fn path_loss_db(params: &ChannelParams, kind: PathKind, d: f64) -> f64 {
    let d = if d < 1.0 {
        log::debug!("path_loss_db: clamping sub-reference distance {d} m to 1 m");
        1.0
    } else {
        d
    };
    params.a_db(kind) + 10.0 * params.gamma(kind) * d.log10()
}

/// Received power in watt over a fraction `b_u / B` of the band:
/// `(b_u/B) * P_tx * A' * d^-gamma`.
pub fn received_power_w(
    params: &ChannelParams,
    kind: PathKind,
    h: f64,
    r: f64,
    band_fraction: f64,
) -> f64 {
    debug_assert!(band_fraction > 0.0 && band_fraction <= 1.0);
    let d = euclidean_distance(r, h).max(1.0);
    band_fraction * params.tx_power_w * params.a_lin(kind) * d.powf(-params.gamma(kind))
}

/// Expected received power at full band, averaging LoS and NLoS states by
/// their occurrence probabilities at this geometry.
pub fn expected_rx_power_w(params: &ChannelParams, h: f64, r: f64) -> f64 {
    let p = los_probability(params, h, r);
    p * received_power_w(params, PathKind::Los, h, r, 1.0)
        + (1.0 - p) * received_power_w(params, PathKind::Nlos, h, r, 1.0)
}

/// Signal-to-noise ratio (linear). Independent of the allocated bandwidth:
/// both signal and noise scale with `b_u`, so the fraction cancels.
pub fn snr(params: &ChannelParams, kind: PathKind, h: f64, r: f64) -> f64 {
    received_power_w(params, kind, h, r, 1.0) / params.full_band_noise_w()
}

/// Signal-to-interference-plus-noise ratio (linear).
///
/// `interferer_full_band_w` holds each interfering drone's expected received
/// power at the victim evaluated over the full band; the victim's sub-band
/// captures `band_fraction` of each (interferers transmit at flat spectral
/// density), so the ratio is again independent of `band_fraction`.
pub fn sinr(
    params: &ChannelParams,
    kind: PathKind,
    h: f64,
    r: f64,
    interferer_full_band_w: &[f64],
    band_fraction: f64,
) -> f64 {
    let s = received_power_w(params, kind, h, r, band_fraction);
    let i: f64 = interferer_full_band_w.iter().sum::<f64>() * band_fraction;
    let n = params.noise_w(band_fraction * params.bandwidth_hz);
    s / (i + n)
}

/// Expected spectral efficiency in bps/Hz: the LoS/NLoS mixture of Shannon
/// efficiencies at this geometry under `interference_full_band_w` watt of
/// expected interference (full-band).
pub fn expected_se(
    params: &ChannelParams,
    h: f64,
    r: f64,
    interference_full_band_w: f64,
    band_fraction: f64,
) -> f64 {
    debug_assert!(band_fraction > 0.0 && band_fraction <= 1.0);
    let p = los_probability(params, h, r);
    let denom = interference_full_band_w + params.full_band_noise_w();
    let s_los = received_power_w(params, PathKind::Los, h, r, 1.0);
    let s_nlos = received_power_w(params, PathKind::Nlos, h, r, 1.0);
    p * (1.0 + s_los / denom).log2() + (1.0 - p) * (1.0 + s_nlos / denom).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params() -> ChannelParams {
        ChannelParams::urban_defaults()
    }

    // Expected values below were frozen from direct dB-domain evaluation of
    // the model formulas (independent of the linear-domain implementation).

    #[test]
    fn los_probability_frozen_values() {
        let p = params();
        // theta = 45 deg
        assert_relative_eq!(los_probability(&p, 10.0, 10.0), 0.9676918999, epsilon = 1e-9);
        // theta = atan(0.25) = 14.0362 deg
        assert_relative_eq!(los_probability(&p, 10.0, 40.0), 0.1744221193, epsilon = 1e-9);
        // overhead limit
        assert_relative_eq!(los_probability(&p, 10.0, 0.0), 0.9999750745, epsilon = 1e-9);
    }

    #[test]
    fn path_loss_reference_values() {
        let p = params();
        assert_relative_eq!(path_loss_db(&p, PathKind::Los, 10.0), 62.0, epsilon = 1e-12);
        assert_relative_eq!(path_loss_db(&p, PathKind::Nlos, 10.0), 70.5, epsilon = 1e-12);
        assert_relative_eq!(path_loss_db(&p, PathKind::Los, 1.0), 41.1, epsilon = 1e-12);
        // sub-reference clamp
        assert_relative_eq!(path_loss_db(&p, PathKind::Los, 0.2), 41.1, epsilon = 1e-12);
    }

    #[test]
    fn received_power_matches_db_route() {
        let p = params();
        // 24 dBm - 62 dB = -38 dBm
        let rx = received_power_w(&p, PathKind::Los, 10.0, 0.0, 1.0);
        assert_relative_eq!(watt_to_dbm(rx), -38.0, epsilon = 1e-9);
        assert_relative_eq!(rx, 1.58489319e-7, max_relative = 1e-8);
        // half band carries half the power (-3.01 dB)
        let half = received_power_w(&p, PathKind::Los, 10.0, 0.0, 0.5);
        assert_relative_eq!(watt_to_dbm(half), -41.0102999566, epsilon = 1e-9);
        // NLoS at r=40: 24 dBm - (33 + 37.5 log10(41.231)) = -69.5709 dBm
        let nlos = received_power_w(&p, PathKind::Nlos, 10.0, 40.0, 1.0);
        assert_relative_eq!(watt_to_dbm(nlos), -69.5709, epsilon = 1e-4);
        assert_relative_eq!(nlos, 1.10384545e-10, max_relative = 1e-8);
        // dual route: linear-domain implementation vs dB-domain formula
        let d = euclidean_distance(40.0, 10.0);
        let via_db = dbm_to_watt(24.0 - path_loss_db(&p, PathKind::Nlos, d));
        assert_relative_eq!(nlos, via_db, max_relative = 1e-12);
    }

    #[test]
    fn snr_frozen_values() {
        let p = params();
        // -38 dBm over a -95 dBm noise floor: 57 dB
        let s = snr(&p, PathKind::Los, 10.0, 0.0);
        assert_relative_eq!(s, 5.01187234e5, max_relative = 1e-8);
        assert_relative_eq!(10.0 * s.log10(), 57.0, epsilon = 1e-9);
        let s = snr(&p, PathKind::Nlos, 10.0, 40.0);
        assert_relative_eq!(s, 349.066581, max_relative = 1e-8);
        assert_relative_eq!(10.0 * s.log10(), 25.4291, epsilon = 1e-4);
    }

    #[test]
    fn noise_floor_is_minus_95_dbm() {
        let p = params();
        assert_relative_eq!(watt_to_dbm(p.full_band_noise_w()), -95.0, epsilon = 1e-9);
        assert_relative_eq!(p.noise_density_w_per_hz(), 3.1622776602e-20, max_relative = 1e-9);
    }

    #[test]
    fn sinr_reduces_to_snr_without_interferers() {
        let p = params();
        let a = sinr(&p, PathKind::Los, 10.0, 17.0, &[], 0.7);
        let b = snr(&p, PathKind::Los, 10.0, 17.0);
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn sinr_halves_when_interference_equals_noise() {
        let p = params();
        let n_full = p.full_band_noise_w();
        let a = sinr(&p, PathKind::Los, 10.0, 5.0, &[n_full], 1.0);
        let b = snr(&p, PathKind::Los, 10.0, 5.0);
        assert_relative_eq!(a, b / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn sinr_one_nlos_interferer_at_80m() {
        let p = params();
        // Serving LoS link overhead; one NLoS interferer 80 m away on the
        // ground (d = 80.62 m). Frozen from dB arithmetic:
        //   S = -38 dBm, I = 24 - (33 + 37.5 log10(80.6226)) = -80.4921 dBm,
        //   N = -95 dBm  ->  SINR = 42.3410 dB.
        let i = received_power_w(&p, PathKind::Nlos, 10.0, 80.0, 1.0);
        assert_relative_eq!(watt_to_dbm(i), -80.4921, epsilon = 1e-4);
        let v = sinr(&p, PathKind::Los, 10.0, 0.0, &[i], 1.0);
        assert_relative_eq!(10.0 * v.log10(), 42.3410, epsilon = 1e-4);
    }

    #[test]
    fn expected_se_frozen_values() {
        let p = params();
        // overhead, no interference: mixture of 18.9350 (LoS) and 16.1114 (NLoS)
        assert_relative_eq!(expected_se(&p, 10.0, 0.0, 0.0, 1.0), 18.93492264, epsilon = 1e-6);
        // cell-edge at r=40
        assert_relative_eq!(expected_se(&p, 10.0, 40.0, 0.0, 1.0), 9.53502391, epsilon = 1e-6);
    }

    #[test]
    fn expected_se_is_a_convex_combination() {
        let p = params();
        for &r in &[0.0, 5.0, 20.0, 40.0, 75.0] {
            let lo = (1.0 + snr(&p, PathKind::Nlos, 10.0, r)).log2();
            let hi = (1.0 + snr(&p, PathKind::Los, 10.0, r)).log2();
            let se = expected_se(&p, 10.0, r, 0.0, 1.0);
            assert!(se >= lo.min(hi) - 1e-12 && se <= hi.max(lo) + 1e-12, "r={r}");
        }
    }

    #[test]
    fn expected_rx_power_mixture_value() {
        let p = params();
        assert_relative_eq!(
            expected_rx_power_w(&p, 10.0, 80.0),
            1.40400672e-10,
            max_relative = 1e-8
        );
    }

    proptest! {
        #[test]
        fn complement_sums_to_one(h in 1.0f64..150.0, r in 0.0f64..500.0) {
            let p = params();
            let los = los_probability(&p, h, r);
            let nlos = 1.0 - los;
            prop_assert!(los > 0.0 && los < 1.0);
            prop_assert!((los + nlos - 1.0).abs() < 1e-15);
        }

        #[test]
        fn los_probability_monotone(h in 1.0f64..100.0, r in 0.1f64..400.0) {
            let p = params();
            prop_assert!(los_probability(&p, h + 1.0, r) > los_probability(&p, h, r));
            prop_assert!(los_probability(&p, h, r + 1.0) < los_probability(&p, h, r));
        }

        #[test]
        fn snr_band_fraction_invariant(h in 2.0f64..50.0, r in 0.0f64..300.0) {
            let p = params();
            let reference = snr(&p, PathKind::Los, h, r);
            for frac in [0.1, 0.5, 1.0] {
                let via_parts = received_power_w(&p, PathKind::Los, h, r, frac)
                    / p.noise_w(frac * p.bandwidth_hz);
                prop_assert!((via_parts - reference).abs() / reference < 1e-12);
            }
        }

        #[test]
        fn snr_monotone_in_r(h in 2.0f64..50.0, r in 0.0f64..300.0, dr in 0.01f64..50.0) {
            let p = params();
            prop_assert!(snr(&p, PathKind::Los, h, r) > snr(&p, PathKind::Los, h, r + dr));
            prop_assert!(snr(&p, PathKind::Nlos, h, r) > snr(&p, PathKind::Nlos, h, r + dr));
        }

        #[test]
        fn sinr_never_exceeds_snr(
            h in 2.0f64..50.0,
            r in 0.0f64..300.0,
            i1 in 0.0f64..1e-8,
            i2 in 0.0f64..1e-10,
            frac in 0.05f64..1.0,
        ) {
            let p = params();
            let with_i = sinr(&p, PathKind::Los, h, r, &[i1, i2], frac);
            let without = snr(&p, PathKind::Los, h, r);
            prop_assert!(with_i <= without * (1.0 + 1e-12));
            if i1 + i2 == 0.0 {
                prop_assert!((with_i - without).abs() / without < 1e-12);
            }
        }

        #[test]
        fn expected_se_decreasing_in_interference(
            h in 2.0f64..50.0,
            r in 0.0f64..300.0,
            i in 1e-14f64..1e-8,
        ) {
            let p = params();
            prop_assert!(expected_se(&p, h, r, i, 1.0) < expected_se(&p, h, r, 0.0, 1.0));
            prop_assert!(expected_se(&p, h, r, 2.0 * i, 1.0) < expected_se(&p, h, r, i, 1.0));
        }

        #[test]
        fn expected_se_band_fraction_invariant(r in 0.0f64..300.0, frac in 0.05f64..1.0) {
            let p = params();
            let a = expected_se(&p, 10.0, r, 1e-12, frac);
            let b = expected_se(&p, 10.0, r, 1e-12, 1.0);
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}

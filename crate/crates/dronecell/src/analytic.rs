//! Closed-form single-drone single-user model: a drone serves one static
//! user drawn uniformly in a disk of radius `R`, either hovering above the
//! center or flying toward the user at speed `v` for the duration of a
//! transmission of length `tau`.
//!
//! The hovering expectation integrates the LoS/NLoS-averaged SE against the
//! radial density `f(r) = 2r / R^2`. The repositioning value at initial
//! distance `r0` splits the transmission into a moving fraction
//! `c = t_m / tau` with `t_m = min(r0 / v, tau)` — during which the SE is the
//! path average along the radial approach — and a hovering-overhead remainder
//! weighted `1 - c`. The improvement ratio admits an approximate upper bound
//! reached as `tau -> inf`: all-LoS SE overhead at distance `h` over all-NLoS
//! SE at distance `R`.

use crate::channel::{self, ChannelParams, PathKind};
use crate::quadrature::{self, QuadratureError};

/// Inputs of the single-drone analysis.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticScenario {
    /// Disk radius in metres.
    pub radius_m: f64,
    /// Drone height in metres.
    pub height_m: f64,
    /// Drone speed in m/s (zero means the drone cannot reposition).
    pub speed_mps: f64,
    /// Transmission time in seconds, an independent sweep variable here.
    pub tau_s: f64,
    pub channel: ChannelParams,
}

impl AnalyticScenario {
    pub fn new(radius_m: f64, height_m: f64, speed_mps: f64, tau_s: f64, channel: ChannelParams) -> Self {
        assert!(radius_m > 0.0 && height_m > 0.0 && tau_s > 0.0 && speed_mps >= 0.0);
        Self {
            radius_m,
            height_m,
            speed_mps,
            tau_s,
            channel,
        }
    }

    /// SE of a hovering drone serving a user at ground distance `r0`
    /// (single cell, no interference).
    pub fn hover_se_at(&self, r0: f64) -> f64 {
        debug_assert!((0.0..=self.radius_m).contains(&r0));
        channel::expected_se(&self.channel, self.height_m, r0, 0.0, 1.0)
    }

    /// Expected hovering SE over the uniform user position.
    pub fn hover_se_expected(&self) -> Result<f64, QuadratureError> {
        let density = 2.0 / (self.radius_m * self.radius_m);
        quadrature::integrate(&|r: f64| self.hover_se_at(r) * density * r, 0.0, self.radius_m)
    }

    /// SE of a repositioning drone serving a user initially at `r0`.
    pub fn mobile_se_at(&self, r0: f64) -> Result<f64, QuadratureError> {
        debug_assert!((0.0..=self.radius_m).contains(&r0));
        if r0 == 0.0 || self.speed_mps == 0.0 {
            // already overhead, or unable to approach
            return Ok(self.hover_se_at(r0));
        }
        let t_m = (r0 / self.speed_mps).min(self.tau_s);
        let travel = self.speed_mps * t_m;
        if travel <= 0.0 {
            return Ok(self.hover_se_at(r0));
        }
        let c = t_m / self.tau_s;
        let lo = r0 - travel;
        let path_integral = quadrature::integrate(&|r: f64| self.hover_se_at(r), lo, r0)?;
        Ok(c * path_integral / travel + (1.0 - c) * self.hover_se_at(0.0))
    }

    /// Expected repositioning SE over the uniform user position.
    pub fn mobile_se_expected(&self) -> Result<f64, QuadratureError> {
        let density = 2.0 / (self.radius_m * self.radius_m);
        quadrature::integrate(
            &|r: f64| self.mobile_se_at(r).expect("inner path average converges") * density * r,
            0.0,
            self.radius_m,
        )
    }

    /// Approximate upper bound on the repositioning-over-hovering SE ratio:
    /// `log2(P A'_LoS h^-g_LoS / BN') / log2(P A'_NLoS R^-g_NLoS / BN')`.
    ///
    /// Valid in the high-SNR regime; logs a warning when either SNR term is
    /// not much larger than one.
    pub fn theorem1_bound(&self) -> f64 {
        let c = &self.channel;
        let snr_los_h = channel::snr(c, PathKind::Los, self.height_m, 0.0);
        let snr_nlos_r = c.tx_power_w * 10f64.powf(-c.a_nlos_db / 10.0)
            * self.radius_m.powf(-c.gamma_nlos)
            / c.full_band_noise_w();
        if snr_los_h < 10.0 || snr_nlos_r < 10.0 {
            log::warn!(
                "theorem1_bound outside its high-SNR regime (SNR terms {snr_los_h:.2}, {snr_nlos_r:.2})"
            );
        }
        snr_los_h.log2() / snr_nlos_r.log2()
    }
}

/// One row of the analytic sweep export.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub tau_s: f64,
    pub speed_mps: f64,
    pub height_m: f64,
    pub radius_m: f64,
    pub hover_se: f64,
    pub mobile_se: f64,
    pub ratio: f64,
    pub bound: f64,
}

/// Evaluate the closed forms over a (tau, v) grid.
pub fn sweep(
    radius_m: f64,
    height_m: f64,
    channel: ChannelParams,
    taus: &[f64],
    speeds: &[f64],
) -> Result<Vec<SweepRow>, QuadratureError> {
    let mut rows = Vec::with_capacity(taus.len() * speeds.len());
    for &v in speeds {
        for &tau in taus {
            let scn = AnalyticScenario::new(radius_m, height_m, v, tau, channel);
            let hover = scn.hover_se_expected()?;
            let mobile = scn.mobile_se_expected()?;
            rows.push(SweepRow {
                tau_s: tau,
                speed_mps: v,
                height_m,
                radius_m,
                hover_se: hover,
                mobile_se: mobile,
                ratio: mobile / hover,
                bound: scn.theorem1_bound(),
            });
        }
    }
    Ok(rows)
}

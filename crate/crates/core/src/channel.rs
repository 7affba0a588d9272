//! Two-state (LOS/NLOS) mmWave channel: power-law path loss, Gamma
//! shadowing, Nakagami-m small-scale fading, received power and SINR.
//!
//! All gains are linear power ratios; decibels appear only at configuration
//! and I/O boundaries. Channel parameters are measurement-anchored, so the
//! carrier frequency is carried for documentation but does not enter the
//! path-loss law (the 1 m intercept already encodes it).

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::antenna::{ue_gain, AntennaPattern, ApGain, BeamState};
use crate::blockage::BlockageState;
use crate::error::{Error, Result};
use crate::geometry::euclidean_3d_distance;

/// Channel parameters of one blockage state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    pub pl_exponent: f64,
    pub pl_intercept_db: f64,
    pub shadow_shape: f64,
    pub shadow_scale: f64,
    pub nakagami_m: f64,
}

impl StateParams {
    pub fn new(
        pl_exponent: f64,
        pl_intercept_db: f64,
        shadow_shape: f64,
        shadow_scale: f64,
        nakagami_m: f64,
    ) -> Result<Self> {
        if !(pl_exponent >= 0.0) {
            return Err(Error::invalid("path-loss exponent must be non-negative"));
        }
        if !(shadow_shape > 0.0) || !(shadow_scale > 0.0) {
            return Err(Error::invalid("shadowing shape and scale must be positive"));
        }
        if !(nakagami_m >= 0.5) {
            return Err(Error::invalid("Nakagami m must be at least 0.5"));
        }
        Ok(Self { pl_exponent, pl_intercept_db, shadow_shape, shadow_scale, nakagami_m })
    }

    /// Linear path gain at 1 m.
    pub fn intercept_linear(&self) -> f64 {
        10f64.powf(-self.pl_intercept_db / 10.0)
    }
}

/// LOS/NLOS parameter pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub los: StateParams,
    pub nlos: StateParams,
}

impl ChannelParams {
    pub fn new(los: StateParams, nlos: StateParams) -> Self {
        Self { los, nlos }
    }

    #[inline]
    pub fn state(&self, state: BlockageState) -> &StateParams {
        match state {
            BlockageState::Los => &self.los,
            BlockageState::Nlos => &self.nlos,
        }
    }

    /// 60 GHz car-park measurements, UE held in the hand.
    pub fn carpark_hand() -> Self {
        Self {
            los: StateParams::new(1.72, 63.4, 4.48, 0.27, 3.02).unwrap(),
            nlos: StateParams::new(1.94, 65.3, 1.18, 1.52, 4.68).unwrap(),
        }
    }

    /// 60 GHz car-park measurements, UE in a pocket.
    pub fn carpark_pocket() -> Self {
        Self {
            los: StateParams::new(1.70, 59.1, 1.96, 0.75, 4.21).unwrap(),
            nlos: StateParams::new(0.61, 88.5, 2.80, 0.47, 2.46).unwrap(),
        }
    }
}

/// Radio-level constants of the experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    pub tx_power_dbm: f64,
    pub bandwidth_hz: f64,
    pub carrier_hz: f64,
    pub noise_figure_db: f64,
    pub sinr_threshold_db: f64,
}

impl RadioConfig {
    pub fn new(
        tx_power_dbm: f64,
        bandwidth_hz: f64,
        carrier_hz: f64,
        noise_figure_db: f64,
        sinr_threshold_db: f64,
    ) -> Result<Self> {
        if !(bandwidth_hz > 0.0) || !(carrier_hz > 0.0) {
            return Err(Error::invalid("bandwidth and carrier frequency must be positive"));
        }
        Ok(Self { tx_power_dbm, bandwidth_hz, carrier_hz, noise_figure_db, sinr_threshold_db })
    }

    pub fn tx_power_mw(&self) -> f64 {
        10f64.powf(self.tx_power_dbm / 10.0)
    }

    pub fn sinr_threshold_linear(&self) -> f64 {
        10f64.powf(self.sinr_threshold_db / 10.0)
    }
}

/// Thermal noise power over the configured bandwidth, in milliwatts
/// (-174 dBm/Hz floor at 290 K plus the noise figure).
pub fn noise_power_mw(radio: &RadioConfig) -> f64 {
    let dbm = -174.0 + 10.0 * radio.bandwidth_hz.log10() + radio.noise_figure_db;
    10f64.powf(dbm / 10.0)
}

/// Linear path gain at 3-D distance `r_a` for the given blockage state.
pub fn path_gain(r_a: f64, state: BlockageState, params: &ChannelParams) -> Result<f64> {
    if !(r_a > 0.0) {
        return Err(Error::invalid("3-D distance must be positive"));
    }
    let p = params.state(state);
    Ok(p.intercept_linear() * r_a.powf(-p.pl_exponent))
}

/// One draw of the Gamma-distributed shadowing gain.
pub fn sample_shadowing<R: Rng + ?Sized>(
    state: BlockageState,
    params: &ChannelParams,
    rng: &mut R,
) -> f64 {
    let p = params.state(state);
    Gamma::new(p.shadow_shape, p.shadow_scale).unwrap().sample(rng)
}

/// One draw of the Nakagami-m small-scale power gain, i.e. the
/// squared-envelope distribution Gamma(m, 1/m) with unit mean.
pub fn sample_fading<R: Rng + ?Sized>(
    state: BlockageState,
    params: &ChannelParams,
    rng: &mut R,
) -> f64 {
    let m = params.state(state).nakagami_m;
    Gamma::new(m, 1.0 / m).unwrap().sample(rng)
}

/// Fully factored received power of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSample {
    pub state: BlockageState,
    pub ap_gain: f64,
    pub ue_gain: f64,
    pub path_gain: f64,
    pub shadow_gain: f64,
    pub fading_gain: f64,
    pub rx_power_mw: f64,
}

/// Samples shadowing and fading and assembles the received power of the AP
/// at `(d_a, theta_a)` under the given beam state.
#[allow(clippy::too_many_arguments)]
pub fn received_power<R: Rng + ?Sized>(
    d_a: f64,
    theta_a: f64,
    state: BlockageState,
    beam: &BeamState,
    patterns: (&AntennaPattern, &AntennaPattern),
    params: &ChannelParams,
    radio: &RadioConfig,
    h_a: f64,
    rng: &mut R,
) -> Result<LinkSample> {
    if !(d_a >= 0.0) {
        return Err(Error::invalid("horizontal distance must be non-negative"));
    }
    if !(h_a > 0.0) {
        return Err(Error::invalid("AP height must be positive"));
    }
    let (pattern_a, pattern_u) = patterns;
    let g_a = ApGain::new(pattern_a, h_a).gain(d_a);
    let g_u = ue_gain(d_a, theta_a, beam, pattern_u, h_a);
    let l = path_gain(euclidean_3d_distance(d_a, h_a), state, params)?;
    let b = sample_shadowing(state, params, rng);
    let h = sample_fading(state, params, rng);
    Ok(LinkSample {
        state,
        ap_gain: g_a,
        ue_gain: g_u,
        path_gain: l,
        shadow_gain: b,
        fading_gain: h,
        rx_power_mw: radio.tx_power_mw() * g_a * g_u * l * b * h,
    })
}

/// SINR of the serving link against the interferer set plus noise.
pub fn sinr(serving: &LinkSample, interferers: &[LinkSample], noise_mw: f64) -> f64 {
    debug_assert!(noise_mw > 0.0);
    let interference: f64 = interferers.iter().map(|l| l.rx_power_mw).sum();
    serving.rx_power_mw / (noise_mw + interference)
}

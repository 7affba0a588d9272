//! Cone-bulb directivity model and the AP/UE gain rules.
//!
//! An antenna radiates a constant main-lobe gain `m` inside its beamwidth and
//! a constant side-lobe gain `s` elsewhere, with `m` fixed by energy
//! conservation over the sphere. The AP points straight down, so its
//! main lobe illuminates a disc on the floor; the UE steers its main lobe at
//! the serving AP, illuminating either a disc or an unbounded circular sector
//! on the ceiling depending on the serving distance.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Smallest accepted beamwidth for the bound-distance formula, in radians.
pub const MIN_BEAMWIDTH: f64 = 1e-6;

/// Main-lobe gain that conserves total energy for a two-level pattern.
pub fn main_lobe_gain(beamwidth: f64, side_lobe_gain: f64) -> Result<f64> {
    if !beamwidth.is_finite() || beamwidth <= 0.0 || beamwidth > TAU {
        return Err(Error::invalid("beamwidth must lie in (0, 2*pi]"));
    }
    if !side_lobe_gain.is_finite() || side_lobe_gain <= 0.0 || side_lobe_gain >= 1.0 {
        return Err(Error::invalid("side-lobe gain must lie in (0, 1)"));
    }
    let c = (beamwidth / 2.0).cos();
    Ok((2.0 - side_lobe_gain * (1.0 + c)) / (1.0 - c))
}

/// Two-level directivity pattern: main-lobe gain inside the beamwidth,
/// side-lobe gain outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    beamwidth: f64,
    side_lobe_gain: f64,
    main_lobe_gain: f64,
}

impl AntennaPattern {
    pub fn new(beamwidth: f64, side_lobe_gain: f64) -> Result<Self> {
        let main = main_lobe_gain(beamwidth, side_lobe_gain)?;
        Ok(Self { beamwidth, side_lobe_gain, main_lobe_gain: main })
    }

    pub fn beamwidth(&self) -> f64 {
        self.beamwidth
    }

    pub fn side_lobe_gain(&self) -> f64 {
        self.side_lobe_gain
    }

    pub fn main_lobe_gain(&self) -> f64 {
        self.main_lobe_gain
    }
}

/// Radius of the floor disc illuminated by a downward-pointing main lobe.
pub fn ap_illumination_radius(h_a: f64, beamwidth_a: f64) -> Result<f64> {
    if !(h_a > 0.0) {
        return Err(Error::invalid("AP height must be positive"));
    }
    if !beamwidth_a.is_finite() || beamwidth_a <= 0.0 || beamwidth_a >= PI {
        return Err(Error::invalid("AP beamwidth must lie in (0, pi) for a bounded cone"));
    }
    Ok(h_a * (beamwidth_a / 2.0).tan())
}

/// Serving distance at which the UE main-lobe projection on the ceiling
/// transitions from a bounded circle to an unbounded circular sector.
pub fn ue_bound_distance(h_a: f64, beamwidth_u: f64) -> Result<f64> {
    if !(h_a > 0.0) {
        return Err(Error::invalid("AP height must be positive"));
    }
    if !beamwidth_u.is_finite() || beamwidth_u < MIN_BEAMWIDTH || beamwidth_u >= PI {
        return Err(Error::invalid("UE beamwidth must lie in [1e-6, pi) for a bounded cone"));
    }
    Ok(h_a / (beamwidth_u / 2.0).tan())
}

/// Azimuth and horizontal distance of the serving AP as seen from the UE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamState {
    pub serving_orientation: f64,
    pub serving_distance: f64,
}

impl BeamState {
    pub fn new(serving_orientation: f64, serving_distance: f64) -> Result<Self> {
        if !(serving_distance >= 0.0) {
            return Err(Error::invalid("serving distance must be non-negative"));
        }
        Ok(Self {
            serving_orientation: normalize_angle(serving_orientation),
            serving_distance,
        })
    }
}

/// Wraps an angle to `[0, 2*pi)`.
#[inline]
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}

/// Magnitude of the shortest-arc difference between two angles, in `[0, pi]`.
#[inline]
pub fn wrapped_angle_distance(a: f64, b: f64) -> f64 {
    let r = (a - b).rem_euclid(TAU);
    if r > PI {
        TAU - r
    } else {
        r
    }
}

/// Precomputed AP gain rule for a fixed pattern and mounting height.
///
/// Beamwidths of `pi` and above illuminate the whole floor (the cone opens
/// past the horizontal), so every horizontal distance sees the main lobe.
#[derive(Debug, Clone, Copy)]
pub struct ApGain {
    main: f64,
    side: f64,
    radius: f64,
}

impl ApGain {
    pub fn new(pattern: &AntennaPattern, h_a: f64) -> Self {
        debug_assert!(h_a > 0.0);
        let radius = if pattern.beamwidth >= PI {
            f64::INFINITY
        } else {
            h_a * (pattern.beamwidth / 2.0).tan()
        };
        Self { main: pattern.main_lobe_gain, side: pattern.side_lobe_gain, radius }
    }

    /// Distance ties resolve to the main lobe.
    #[inline]
    pub fn gain(&self, d_a: f64) -> f64 {
        if d_a <= self.radius {
            self.main
        } else {
            self.side
        }
    }
}

/// Transmit directivity gain of a downward-pointing AP towards a UE at
/// horizontal distance `d_a`.
pub fn ap_gain(d_a: f64, pattern: &AntennaPattern, h_a: f64) -> f64 {
    ApGain::new(pattern, h_a).gain(d_a)
}

/// Precomputed UE gain rule for a fixed pattern and ceiling height.
///
/// For beamwidths at or above `pi` the bounded regime disappears
/// (`d_bound -> 0`) and every AP is tested against the sector, whose
/// half-angle is at least `pi/2`; a full `2*pi` beamwidth is omnidirectional
/// with unit gain.
#[derive(Debug, Clone, Copy)]
pub struct UeGain {
    main: f64,
    side: f64,
    main_radius: f64,
    bound_distance: f64,
    half_width: f64,
    omni: bool,
}

impl UeGain {
    pub fn new(pattern: &AntennaPattern, h_a: f64) -> Self {
        debug_assert!(h_a > 0.0);
        let (main_radius, bound_distance) = if pattern.beamwidth >= PI {
            (f64::INFINITY, 0.0)
        } else {
            let t = (pattern.beamwidth / 2.0).tan();
            (h_a * t, h_a / t)
        };
        Self {
            main: pattern.main_lobe_gain,
            side: pattern.side_lobe_gain,
            main_radius,
            bound_distance,
            half_width: pattern.beamwidth / 2.0,
            omni: pattern.beamwidth >= TAU,
        }
    }

    /// Receive gain for an AP at `(d_a, theta_a)` while the main lobe points
    /// at the serving AP's azimuth. The sector test uses a strict inequality;
    /// distance ties resolve to the main lobe.
    #[inline]
    pub fn gain(&self, d_a: f64, theta_a: f64, serving_orientation: f64) -> f64 {
        if self.omni {
            return self.main;
        }
        if d_a < self.bound_distance {
            if d_a <= self.main_radius {
                self.main
            } else {
                self.side
            }
        } else if wrapped_angle_distance(theta_a, serving_orientation) < self.half_width {
            self.main
        } else {
            self.side
        }
    }

    /// Gain an AP would get if it were itself the serving AP (the sector test
    /// is then trivially satisfied).
    #[inline]
    pub fn gain_as_serving(&self, d_a: f64) -> f64 {
        if self.omni || d_a >= self.bound_distance || d_a <= self.main_radius {
            self.main
        } else {
            self.side
        }
    }
}

/// Receive directivity gain of a UE steered at the serving AP, evaluated for
/// an AP at horizontal distance `d_a` and azimuth `theta_a`.
pub fn ue_gain(
    d_a: f64,
    theta_a: f64,
    beam: &BeamState,
    pattern_u: &AntennaPattern,
    h_a: f64,
) -> f64 {
    UeGain::new(pattern_u, h_a).gain(d_a, theta_a, beam.serving_orientation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const DEG: f64 = PI / 180.0;

    #[test]
    fn main_lobe_gain_examples() {
        assert_eq!(main_lobe_gain(TAU, 0.1).unwrap(), 1.0);
        assert!((main_lobe_gain(PI, 0.1).unwrap() - 1.9).abs() < 1e-15);
        // Value cross-checked against a numeric solid-angle integration of
        // the energy-conservation identity.
        assert!((main_lobe_gain(PI / 2.0, 0.1).unwrap() - 6.2455844122715725).abs() < 1e-12);
    }

    #[test]
    fn main_lobe_gain_rejects_bad_inputs() {
        assert!(main_lobe_gain(0.0, 0.1).is_err());
        assert!(main_lobe_gain(-1.0, 0.1).is_err());
        assert!(main_lobe_gain(7.0, 0.1).is_err());
        assert!(main_lobe_gain(PI, 0.0).is_err());
        assert!(main_lobe_gain(PI, 1.0).is_err());
        assert!(main_lobe_gain(PI, -0.2).is_err());
    }

    /// Spherical-cap area over the sphere area, straight from the geometry.
    fn cap_fraction(beamwidth: f64) -> f64 {
        let r: f64 = 1.0;
        let cap = 2.0 * PI * r * r * (1.0 - (beamwidth / 2.0).cos());
        let sph = 4.0 * PI * r * r;
        cap / sph
    }

    #[test]
    fn energy_is_conserved_for_random_patterns() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa11);
        for _ in 0..10_000 {
            let w = rng.random::<f64>() * TAU;
            if w <= 0.0 {
                continue;
            }
            let s = 1e-6 + rng.random::<f64>() * (1.0 - 2e-6);
            let m = main_lobe_gain(w, s).unwrap();
            let f = cap_fraction(w);
            let residual = m * f + s * (1.0 - f) - 1.0;
            assert!(residual.abs() < 1e-12, "w={w} s={s} residual={residual}");
            assert!(m >= s || (m - s).abs() < 1e-12);
        }
    }

    #[test]
    fn main_lobe_gain_is_strictly_decreasing_in_beamwidth() {
        let s = 0.1;
        let mut prev = f64::INFINITY;
        for k in 1..2000 {
            let w = k as f64 / 2000.0 * TAU;
            let m = main_lobe_gain(w, s).unwrap();
            assert!(m < prev, "not decreasing at w={w}");
            prev = m;
        }
    }

    #[test]
    fn illumination_radius_examples() {
        let r = ap_illumination_radius(10.0, 28.0 * DEG).unwrap();
        assert!((r - 2.4932800284318066).abs() < 1e-12);
        assert!((ap_illumination_radius(10.0, PI / 2.0).unwrap() - 10.0).abs() < 1e-12);
        assert!(ap_illumination_radius(0.0, 1.0).is_err());
        assert!(ap_illumination_radius(10.0, PI).is_err());
        assert!(ap_illumination_radius(10.0, 3.2).is_err());
    }

    #[test]
    fn bound_distance_examples() {
        let d = ue_bound_distance(10.0, 45.0 * DEG).unwrap();
        assert!((d - 24.14213562373095).abs() < 1e-10);
        assert!((ue_bound_distance(10.0, PI / 2.0).unwrap() - 10.0).abs() < 1e-12);
        assert!(ue_bound_distance(10.0, 1e-6).unwrap().is_finite());
        assert!(ue_bound_distance(10.0, 0.9e-6).is_err());
        assert!(ue_bound_distance(10.0, PI).is_err());
    }

    #[test]
    fn ap_gain_boundary_and_omni() {
        let pat = AntennaPattern::new(28.0 * DEG, 0.1).unwrap();
        let m = pat.main_lobe_gain();
        let s = pat.side_lobe_gain();
        assert_eq!(ap_gain(0.0, &pat, 10.0), m);
        // Illuminated-circle radius is 2.49328...; a tie takes the main lobe.
        let radius = ap_illumination_radius(10.0, 28.0 * DEG).unwrap();
        assert_eq!(ap_gain(radius, &pat, 10.0), m);
        assert_eq!(ap_gain(radius + 1e-4, &pat, 10.0), s);
        assert_eq!(ap_gain(2.4934, &pat, 10.0), s);
        let omni = AntennaPattern::new(TAU, 0.1).unwrap();
        for &d in &[0.0, 1.0, 50.0, 1e6] {
            assert_eq!(ap_gain(d, &omni, 10.0), 1.0);
        }
        // At and beyond pi the downward cone covers the whole floor.
        let wide = AntennaPattern::new(PI, 0.1).unwrap();
        assert_eq!(ap_gain(1e9, &wide, 10.0), wide.main_lobe_gain());
    }

    #[test]
    fn ue_gain_sector_and_bounded_branches() {
        let pat = AntennaPattern::new(45.0 * DEG, 0.1).unwrap();
        let m = pat.main_lobe_gain();
        let s = pat.side_lobe_gain();
        let beam = BeamState::new(1.0, 30.0).unwrap();
        // Serving AP evaluated against itself right underneath.
        let under = BeamState::new(0.0, 0.0).unwrap();
        assert_eq!(ue_gain(0.0, 0.0, &under, &pat, 10.0), m);
        // Unbounded regime: 30 m > d_U ~ 24.14; sector half-angle 22.5 deg.
        assert_eq!(ue_gain(30.0, 1.0 + 10.0 * DEG, &beam, &pat, 10.0), m);
        assert_eq!(ue_gain(30.0, 1.0 + 30.0 * DEG, &beam, &pat, 10.0), s);
        // Bounded regime gap: r_m ~ 4.142 < 5 < d_U.
        assert_eq!(ue_gain(5.0, 1.0, &beam, &pat, 10.0), s);
        // Inside the bounded disc.
        assert_eq!(ue_gain(4.0, 4.0, &beam, &pat, 10.0), m);
    }

    #[test]
    fn ue_gain_is_invariant_under_angle_wrapping() {
        let pat = AntennaPattern::new(45.0 * DEG, 0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xbea3);
        let beam = BeamState::new(2.3, 50.0).unwrap();
        for _ in 0..100_000 {
            let d = rng.random::<f64>() * 100.0;
            let th = rng.random::<f64>() * TAU - PI;
            let g0 = ue_gain(d, th, &beam, &pat, 10.0);
            let g1 = ue_gain(d, th + TAU, &beam, &pat, 10.0);
            let g2 = ue_gain(d, th - TAU, &beam, &pat, 10.0);
            assert_eq!(g0, g1);
            assert_eq!(g0, g2);
        }
    }

    #[test]
    fn every_gain_is_exactly_main_or_side() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd1c0);
        for _ in 0..1000 {
            let w = 0.01 + rng.random::<f64>() * (TAU - 0.02);
            let s = 0.01 + rng.random::<f64>() * 0.9;
            let pat = AntennaPattern::new(w, s).unwrap();
            let beam = BeamState::new(rng.random::<f64>() * TAU, rng.random::<f64>() * 50.0).unwrap();
            for _ in 0..20 {
                let d = rng.random::<f64>() * 200.0;
                let th = rng.random::<f64>() * TAU;
                let ga = ap_gain(d, &pat, 10.0);
                let gu = ue_gain(d, th, &beam, &pat, 10.0);
                assert!(ga == pat.main_lobe_gain() || ga == pat.side_lobe_gain());
                assert!(gu == pat.main_lobe_gain() || gu == pat.side_lobe_gain());
            }
        }
    }

    #[test]
    fn sector_measure_matches_beamwidth_fraction() {
        let pat = AntennaPattern::new(45.0 * DEG, 0.1).unwrap();
        let gain = UeGain::new(&pat, 10.0);
        let beam = BeamState::new(4.2, 60.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ec7);
        let n = 1_000_000usize;
        let mut hits = 0usize;
        for _ in 0..n {
            let th = rng.random::<f64>() * TAU;
            if gain.gain(60.0, th, beam.serving_orientation) == pat.main_lobe_gain() {
                hits += 1;
            }
        }
        let frac = hits as f64 / n as f64;
        let expect = pat.beamwidth() / TAU;
        assert!((frac - expect).abs() < 0.002, "{frac} vs {expect}");
    }

    #[test]
    fn omnidirectional_ue_gain_is_unity() {
        let pat = AntennaPattern::new(TAU, 0.3).unwrap();
        let beam = BeamState::new(0.0, 10.0).unwrap();
        for &(d, th) in &[(0.0, 0.0), (5.0, 3.0), (100.0, PI)] {
            assert_eq!(ue_gain(d, th, &beam, &pat, 10.0), 1.0);
        }
    }
}

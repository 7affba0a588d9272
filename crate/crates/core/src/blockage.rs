//! Human-body blockage: 3-D screen geometry, the shadowing-angle
//! distribution for uniformly placed bodies, and the analytical per-AP
//! blockage probability evaluated by adaptive quadrature.
//!
//! A body is a vertical rectangle of width `w_B` whose top edge sits `h_B`
//! above UE level. Seen from the UE it shadows a horizontal angle
//! `2*atan(w_B / 2r)` at distance `r`; because APs hang from the ceiling, a
//! body at distance `r` cannot block any AP whose ground distance is inside
//! the blockage-free zone of radius `h_A * r / h_B`.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{horizontal_distance, Point2};
use crate::quad::{adaptive_simpson, DEFAULT_QUAD_BUDGET};

/// Default relative tolerance for blockage-probability quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

/// Grid pitch of the precomputed single-body blockage table, in metres.
const P1_TABLE_STEP: f64 = 0.25;

/// Line-of-sight state of a single AP-UE link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockageState {
    Los,
    Nlos,
}

/// Blocking-screen dimensions and the user-body standoff distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyGeometry {
    width: f64,
    height_above_ue: f64,
    user_body_distance: f64,
}

impl BodyGeometry {
    pub fn new(width: f64, height_above_ue: f64, user_body_distance: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::invalid("body width must be positive"));
        }
        if !(height_above_ue > 0.0) || !height_above_ue.is_finite() {
            return Err(Error::invalid("body height above UE level must be positive"));
        }
        if !(user_body_distance >= 0.0) || !user_body_distance.is_finite() {
            return Err(Error::invalid("user-body distance must be non-negative"));
        }
        Ok(Self { width, height_above_ue, user_body_distance })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height_above_ue(&self) -> f64 {
        self.height_above_ue
    }

    pub fn user_body_distance(&self) -> f64 {
        self.user_body_distance
    }
}

/// One placed body: centre position and the azimuth of the line from the UE
/// to its right shoulder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Body {
    pub position: Point2,
    pub orientation: f64,
}

impl Body {
    pub fn new(position: Point2, orientation: f64) -> Self {
        Self { position, orientation: orientation.rem_euclid(TAU) }
    }
}

/// How the engine evaluates blockage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockageMode {
    /// Independent per-AP Bernoulli draws from the analytical probability.
    Analytic,
    /// Full geometric evaluation against a placed body list (validation).
    ExplicitBodies,
}

/// Blockage model parameters for one experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockageModel {
    pub geometry: BodyGeometry,
    pub rb_density: f64,
    pub mode: BlockageMode,
    pub quadrature_tolerance: f64,
    pub quadrature_budget: usize,
}

impl BlockageModel {
    pub fn new(geometry: BodyGeometry, rb_density: f64, mode: BlockageMode) -> Result<Self> {
        Self::with_quadrature(geometry, rb_density, mode, DEFAULT_QUAD_TOL, DEFAULT_QUAD_BUDGET)
    }

    pub fn with_quadrature(
        geometry: BodyGeometry,
        rb_density: f64,
        mode: BlockageMode,
        quadrature_tolerance: f64,
        quadrature_budget: usize,
    ) -> Result<Self> {
        if !(rb_density >= 0.0) || !rb_density.is_finite() {
            return Err(Error::invalid("random-body density must be non-negative"));
        }
        check_tolerance(quadrature_tolerance)?;
        if quadrature_budget == 0 {
            return Err(Error::invalid("quadrature budget must be positive"));
        }
        Ok(Self { geometry, rb_density, mode, quadrature_tolerance, quadrature_budget })
    }

    /// Deterministic body count implied by the density over a square venue.
    pub fn body_count(&self, side: f64) -> u64 {
        (self.rb_density * side * side).round() as u64
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0) || tol > 1e-3 {
        return Err(Error::invalid("quadrature tolerance must lie in (0, 1e-3]"));
    }
    Ok(())
}

/// Horizontal angle shadowed by a body of width `w_b` at distance `r`;
/// `pi` at zero distance.
pub fn shadow_angle(r: f64, w_b: f64) -> Result<f64> {
    if !(w_b > 0.0) || !w_b.is_finite() {
        return Err(Error::invalid("body width must be positive"));
    }
    if !(r >= 0.0) {
        return Err(Error::invalid("distance must be non-negative"));
    }
    Ok(shadow_angle_unchecked(r, w_b))
}

#[inline]
fn shadow_angle_unchecked(r: f64, w_b: f64) -> f64 {
    if r == 0.0 {
        PI
    } else {
        2.0 * (w_b / (2.0 * r)).atan()
    }
}

/// Distance at which a body of width `w_b` shadows the angle `phi`;
/// inverse of [`shadow_angle`].
pub fn inverse_shadow_angle(phi: f64, w_b: f64) -> Result<f64> {
    if !(w_b > 0.0) || !w_b.is_finite() {
        return Err(Error::invalid("body width must be positive"));
    }
    if !(phi > 0.0) || phi > PI {
        return Err(Error::invalid("shadowing angle must lie in (0, pi]"));
    }
    Ok(inverse_shadow_angle_unchecked(phi, w_b))
}

#[inline]
fn inverse_shadow_angle_unchecked(phi: f64, w_b: f64) -> f64 {
    if phi >= PI {
        0.0
    } else {
        w_b / (2.0 * (phi / 2.0).tan())
    }
}

/// Radius of the blockage-free zone for a body at distance `r_body`.
#[inline]
pub fn free_zone_radius(r_body: f64, h_a: f64, h_b: f64) -> f64 {
    debug_assert!(r_body >= 0.0 && h_a > 0.0 && h_b > 0.0);
    h_a * r_body / h_b
}

/// Whether a single placed body blocks the AP at `ap_pos` as seen from the
/// UE. `d_a` must equal the horizontal UE-AP distance; it is passed in so
/// callers that already know it avoid recomputation.
pub fn is_blocked_geometric(
    ap_pos: Point2,
    d_a: f64,
    ue_pos: Point2,
    body: &Body,
    geometry: &BodyGeometry,
    h_a: f64,
) -> bool {
    debug_assert!((horizontal_distance(ap_pos, ue_pos) - d_a).abs() <= 1e-6);
    let r_b = horizontal_distance(ue_pos, body.position);
    let z_b = free_zone_radius(r_b, h_a, geometry.height_above_ue);
    if d_a <= z_b {
        return false;
    }
    let phi_b = shadow_angle_unchecked(r_b, geometry.width);
    let theta_ap = (ap_pos.y - ue_pos.y).atan2(ap_pos.x - ue_pos.x);
    let theta_b = (theta_ap - body.orientation).rem_euclid(TAU);
    theta_b < phi_b
}

/// Unnormalised pdf of the distance between two uniform points on a square,
/// truncated to `(0, side]`; distances beyond the side never block.
pub fn distance_pdf_square(r: f64, side: f64) -> f64 {
    debug_assert!(side > 0.0);
    if r <= 0.0 || r > side {
        return 0.0;
    }
    let s2 = side * side;
    2.0 * PI * r / s2 - 8.0 * r * r / (s2 * side) + 2.0 * r * r * r / (s2 * s2)
}

#[inline]
fn shadow_pdf_unchecked(phi: f64, w_b: f64, side: f64) -> f64 {
    if phi >= PI {
        return 0.0;
    }
    let rho = inverse_shadow_angle_unchecked(phi, w_b);
    let s2 = side * side;
    let poly = PI * rho / s2 - 4.0 * rho * rho / (s2 * side) + rho * rho * rho / (s2 * s2);
    poly * w_b / (1.0 - phi.cos())
}

/// Pdf of the shadowing angle of a uniformly placed body, on the support
/// `(shadow_angle(side, w_b), pi)`.
pub fn shadow_angle_pdf(phi: f64, w_b: f64, side: f64) -> Result<f64> {
    if !(side > 0.0) || !side.is_finite() {
        return Err(Error::invalid("venue side must be positive"));
    }
    let lower = shadow_angle(side, w_b)?;
    if !(phi > lower) || phi >= PI {
        return Err(Error::invalid("shadowing angle outside the pdf support"));
    }
    Ok(shadow_pdf_unchecked(phi, w_b, side))
}

/// Probability that the user body blocks an AP at ground distance `d_a`.
///
/// Zero inside the self-blockage-free zone; a flat `atan(w_B/2r_0)/pi`
/// beyond it. A zero standoff distance (UE in a pocket) degenerates to 1/2
/// for every positive distance.
pub fn p_self(d_a: f64, geometry: &BodyGeometry, h_a: f64) -> f64 {
    debug_assert!(d_a >= 0.0 && h_a > 0.0);
    let r0 = geometry.user_body_distance;
    if r0 == 0.0 {
        return if d_a > 0.0 { 0.5 } else { 0.0 };
    }
    let z0 = free_zone_radius(r0, h_a, geometry.height_above_ue);
    if d_a >= z0 {
        (geometry.width / (2.0 * r0)).atan() / PI
    } else {
        0.0
    }
}

/// Probability that one uniformly placed body blocks an AP at ground
/// distance `d_a`, by adaptive quadrature over the shadowing angle.
pub fn p_random_one(
    d_a: f64,
    geometry: &BodyGeometry,
    h_a: f64,
    side: f64,
    tol: f64,
) -> Result<f64> {
    p_random_one_with_budget(d_a, geometry, h_a, side, tol, DEFAULT_QUAD_BUDGET)
}

pub fn p_random_one_with_budget(
    d_a: f64,
    geometry: &BodyGeometry,
    h_a: f64,
    side: f64,
    tol: f64,
    budget: usize,
) -> Result<f64> {
    if !(d_a >= 0.0) {
        return Err(Error::invalid("distance must be non-negative"));
    }
    if !(h_a > 0.0) || !(side > 0.0) {
        return Err(Error::invalid("AP height and venue side must be positive"));
    }
    check_tolerance(tol)?;
    let w_b = geometry.width;
    // Bodies beyond the free-zone bound or beyond the venue side are
    // irrelevant, which clamps the angle domain from below.
    let lower = shadow_angle_unchecked(d_a * geometry.height_above_ue / h_a, w_b)
        .max(shadow_angle_unchecked(side, w_b));
    if lower >= PI {
        return Ok(0.0);
    }
    let integrand = |phi: f64| phi / TAU * shadow_pdf_unchecked(phi, w_b, side);
    let p = adaptive_simpson(integrand, lower, PI, tol, budget)?;
    Ok(p.clamp(0.0, 1.0))
}

/// Probability that an AP at ground distance `d_a` is blocked by any body
/// (the user body or one of the uniformly placed ones).
pub fn p_blocked(d_a: f64, model: &BlockageModel, h_a: f64, side: f64) -> Result<f64> {
    let p0 = p_self(d_a, &model.geometry, h_a);
    let n_b = model.body_count(side);
    if n_b == 0 {
        return Ok(p0);
    }
    let p1 = p_random_one_with_budget(
        d_a,
        &model.geometry,
        h_a,
        side,
        model.quadrature_tolerance,
        model.quadrature_budget,
    )?;
    Ok(combine_blockage(p0, p1, n_b))
}

/// `1 - (1-p1)^n * (1-p0)`, evaluated in log space so large body counts do
/// not underflow.
#[inline]
fn combine_blockage(p0: f64, p1: f64, n_b: u64) -> f64 {
    let log_clear = n_b as f64 * (-p1).ln_1p() + (-p0).ln_1p();
    (-log_clear.exp_m1()).clamp(0.0, 1.0)
}

/// Draws the blockage state of one AP from the analytical probability.
pub fn sample_blockage_state<R: Rng + ?Sized>(
    d_a: f64,
    model: &BlockageModel,
    h_a: f64,
    side: f64,
    rng: &mut R,
) -> Result<BlockageState> {
    if model.mode != BlockageMode::Analytic {
        return Err(Error::invalid(
            "analytic state sampling requires Analytic mode; explicit-bodies runs evaluate the placed body list",
        ));
    }
    let p = p_blocked(d_a, model, h_a, side)?;
    Ok(if rng.random::<f64>() < p { BlockageState::Nlos } else { BlockageState::Los })
}

/// Precomputed blockage-probability evaluator for a fixed model, height and
/// venue. The single-body probability is tabulated on a fine distance grid
/// (quadrature at every knot, linear interpolation in between) so per-link
/// sampling stays cheap; the user-body step stays exact.
#[derive(Debug, Clone)]
pub struct BlockageSampler {
    p0_beyond: f64,
    z0: f64,
    r0_zero: bool,
    n_b: u64,
    p1_table: Option<P1Table>,
}

impl BlockageSampler {
    pub fn new(model: &BlockageModel, h_a: f64, side: f64) -> Result<Self> {
        if !(h_a > 0.0) || !(side > 0.0) {
            return Err(Error::invalid("AP height and venue side must be positive"));
        }
        let geom = &model.geometry;
        let r0 = geom.user_body_distance;
        let n_b = model.body_count(side);
        let p1_table = if n_b > 0 {
            Some(P1Table::build(model, h_a, side)?)
        } else {
            None
        };
        Ok(Self {
            p0_beyond: if r0 == 0.0 { 0.5 } else { (geom.width / (2.0 * r0)).atan() / PI },
            z0: free_zone_radius(r0, h_a, geom.height_above_ue),
            r0_zero: r0 == 0.0,
            n_b,
            p1_table,
        })
    }

    #[inline]
    pub fn p_self(&self, d_a: f64) -> f64 {
        let beyond = if self.r0_zero { d_a > 0.0 } else { d_a >= self.z0 };
        if beyond {
            self.p0_beyond
        } else {
            0.0
        }
    }

    #[inline]
    pub fn p_blocked(&self, d_a: f64) -> f64 {
        let p0 = self.p_self(d_a);
        match &self.p1_table {
            None => p0,
            Some(table) => combine_blockage(p0, table.eval(d_a), self.n_b),
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, d_a: f64, rng: &mut R) -> BlockageState {
        if rng.random::<f64>() < self.p_blocked(d_a) {
            BlockageState::Nlos
        } else {
            BlockageState::Los
        }
    }
}

#[derive(Debug, Clone)]
struct P1Table {
    inv_step: f64,
    values: Vec<f64>,
}

impl P1Table {
    fn build(model: &BlockageModel, h_a: f64, side: f64) -> Result<Self> {
        let d_max = side * std::f64::consts::SQRT_2;
        let n = (d_max / P1_TABLE_STEP).ceil() as usize + 1;
        let mut values = Vec::with_capacity(n + 1);
        for i in 0..=n {
            values.push(p_random_one_with_budget(
                i as f64 * P1_TABLE_STEP,
                &model.geometry,
                h_a,
                side,
                model.quadrature_tolerance,
                model.quadrature_budget,
            )?);
        }
        Ok(Self { inv_step: 1.0 / P1_TABLE_STEP, values })
    }

    #[inline]
    fn eval(&self, d: f64) -> f64 {
        if d <= 0.0 {
            return self.values[0];
        }
        let t = d * self.inv_step;
        let i = t as usize;
        if i + 1 >= self.values.len() {
            return *self.values.last().unwrap();
        }
        let frac = t - i as f64;
        self.values[i] + frac * (self.values[i + 1] - self.values[i])
    }
}

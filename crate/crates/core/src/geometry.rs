//! Venue geometry, the hexagonal AP layout, and distance utilities.

use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance for geometric comparisons, in metres.
pub const GEOM_EPS: f64 = 1e-9;

/// A point in the horizontal plane, in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Square venue of the given side length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Venue {
    side: f64,
}

impl Venue {
    pub fn new(side: f64) -> Result<Self> {
        if !side.is_finite() || side <= 0.0 {
            return Err(Error::invalid("venue side must be positive and finite"));
        }
        Ok(Self { side })
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn centre(&self) -> Point2 {
        Point2::new(0.5 * self.side, 0.5 * self.side)
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= -GEOM_EPS && p.x <= self.side + GEOM_EPS && p.y >= -GEOM_EPS && p.y <= self.side + GEOM_EPS
    }
}

/// Horizontal Euclidean distance between two points.
#[inline]
pub fn horizontal_distance(a: Point2, b: Point2) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// 3-D distance to a ceiling point at height `h_a` above a point at
/// horizontal distance `d_a`.
#[inline]
pub fn euclidean_3d_distance(d_a: f64, h_a: f64) -> f64 {
    debug_assert!(d_a >= 0.0 && h_a > 0.0);
    (d_a * d_a + h_a * h_a).sqrt()
}

/// Uniform point in the venue square.
pub fn sample_uniform_point<R: Rng + ?Sized>(venue: &Venue, rng: &mut R) -> Point2 {
    let x = rng.random::<f64>() * venue.side;
    let y = rng.random::<f64>() * venue.side;
    Point2::new(x, y)
}

/// AP positions on a triangular lattice, plus the deployment parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    positions: Vec<Point2>,
    inter_site_distance: f64,
    ap_height: f64,
}

impl Deployment {
    /// Builds a deployment from explicit positions, checking the spacing and
    /// venue-membership invariants. O(n^2) in the number of positions; meant
    /// for hand-built layouts, not generated grids.
    pub fn new(
        positions: Vec<Point2>,
        inter_site_distance: f64,
        ap_height: f64,
        venue: &Venue,
    ) -> Result<Self> {
        if !(inter_site_distance > 0.0) {
            return Err(Error::invalid("inter-site distance must be positive"));
        }
        if !(ap_height > 0.0) {
            return Err(Error::invalid("AP height must be positive"));
        }
        if positions.is_empty() {
            return Err(Error::invalid("deployment must contain at least one AP"));
        }
        for (i, &p) in positions.iter().enumerate() {
            if !venue.contains(p) {
                return Err(Error::invalid(format!("AP {i} lies outside the venue")));
            }
            for &q in &positions[..i] {
                if horizontal_distance(p, q) < inter_site_distance - GEOM_EPS {
                    return Err(Error::invalid("AP spacing below the inter-site distance"));
                }
            }
        }
        Ok(Self { positions, inter_site_distance, ap_height })
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn inter_site_distance(&self) -> f64 {
        self.inter_site_distance
    }

    pub fn ap_height(&self) -> f64 {
        self.ap_height
    }
}

/// Triangular lattice of AP centres (hexagonal cells) over the venue.
///
/// Rows are spaced `delta * sqrt(3)/2` apart with alternate rows offset by
/// `delta / 2`; the lattice is centred on the venue centre so one AP sits at
/// the centre. Lattice points outside the square are dropped.
pub fn generate_hex_grid(venue: &Venue, delta: f64, h_a: f64) -> Result<Deployment> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::invalid("inter-site distance must be positive"));
    }
    if !h_a.is_finite() || h_a <= 0.0 {
        return Err(Error::invalid("AP height must be positive"));
    }
    if delta > venue.side * std::f64::consts::SQRT_2 {
        return Err(Error::invalid("inter-site distance too large for the venue"));
    }
    let centre = venue.centre();
    let row_height = delta * 3f64.sqrt() / 2.0;
    let i_max = ((venue.side / 2.0) / row_height).ceil() as i64 + 1;
    let j_max = ((venue.side / 2.0) / delta).ceil() as i64 + 1;
    let mut positions = Vec::new();
    for i in -i_max..=i_max {
        let y = centre.y + i as f64 * row_height;
        if y < -GEOM_EPS || y > venue.side + GEOM_EPS {
            continue;
        }
        let offset = if i % 2 != 0 { delta / 2.0 } else { 0.0 };
        for j in -j_max..=j_max {
            let x = centre.x + offset + j as f64 * delta;
            if x >= -GEOM_EPS && x <= venue.side + GEOM_EPS {
                positions.push(Point2::new(x, y));
            }
        }
    }
    if positions.is_empty() {
        return Err(Error::invalid("no lattice point falls inside the venue"));
    }
    Ok(Deployment { positions, inter_site_distance: delta, ap_height: h_a })
}

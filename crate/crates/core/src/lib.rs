//! System-level simulator for indoor millimetre-wave networks with
//! ceiling-mounted directional access points.
//!
//! The crate models a square venue with APs laid out on a hexagonal grid,
//! two-level (cone-bulb) directional antennas at both ends of the link,
//! human-body blockage with an analytical per-AP blockage probability, and a
//! two-state (LOS/NLOS) measurement-anchored channel. The [`engine`] module
//! runs deterministic, parallel Monte Carlo batches and parameter sweeps over
//! inter-site distance, beamwidths and blockage scenarios, reporting SINR
//! coverage and area spectral efficiency.

pub mod antenna;
pub mod blockage;
pub mod channel;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod quad;
mod rng;

pub use error::{Error, Result};

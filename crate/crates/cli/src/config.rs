//! Configuration file schema with every default pre-filled.
//!
//! The file is JSON with nested sections; unknown keys are rejected so typos
//! fail loudly. Angles are degrees and powers are dB at this boundary; the
//! engine works in radians and linear units. See `docs/config.md`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use ceilsim::antenna::AntennaPattern;
use ceilsim::blockage::{BlockageMode, BlockageModel, BodyGeometry};
use ceilsim::channel::{ChannelParams, RadioConfig, StateParams};
use ceilsim::engine::{Scenario, ScenarioTable, SimulationConfig, SweepSpec, UePlacement};
use ceilsim::geometry::{Point2, Venue};

use crate::AppError;

pub const TOP_LEVEL_KEYS: &str =
    "venue, deployment, antennas, radio, body, blockage, channel, run, blockage_prob";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub venue: VenueSection,
    pub deployment: DeploymentSection,
    pub antennas: AntennaSection,
    pub radio: RadioSection,
    pub body: BodySection,
    pub blockage: BlockageSection,
    pub channel: ChannelSection,
    pub run: RunSection,
    pub blockage_prob: BlockageProbSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VenueSection {
    pub side_m: f64,
}

impl Default for VenueSection {
    fn default() -> Self {
        Self { side_m: 400.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeploymentSection {
    pub ap_height_m: f64,
    /// Grid pitch used by `blockage-prob --validate`; batch runs take their
    /// pitches from `run.deltas_m`.
    pub inter_site_distance_m: f64,
}

impl Default for DeploymentSection {
    fn default() -> Self {
        Self { ap_height_m: 10.0, inter_site_distance_m: 20.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AntennaSection {
    pub side_lobe_gain_db: f64,
    pub serving_always_main_lobe: bool,
}

impl Default for AntennaSection {
    fn default() -> Self {
        Self { side_lobe_gain_db: -10.0, serving_always_main_lobe: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RadioSection {
    pub tx_power_dbm: f64,
    pub bandwidth_hz: f64,
    pub carrier_hz: f64,
    pub noise_figure_db: f64,
    pub sinr_threshold_db: f64,
}

impl Default for RadioSection {
    fn default() -> Self {
        Self {
            tx_power_dbm: 20.0,
            bandwidth_hz: 2e9,
            carrier_hz: 60e9,
            noise_figure_db: 9.0,
            sinr_threshold_db: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BodySection {
    pub width_m: f64,
    pub height_above_ue_m: f64,
}

impl Default for BodySection {
    fn default() -> Self {
        Self { width_m: 0.4, height_above_ue_m: 0.4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BlockageSection {
    pub quadrature_tolerance: f64,
    pub quadrature_budget: usize,
    /// Random-body density of the crowded scenarios, in bodies per m^2.
    pub crowded_density_per_m2: f64,
    /// User-body standoff of the hand scenarios, in metres.
    pub hand_distance_m: f64,
}

impl Default for BlockageSection {
    fn default() -> Self {
        Self {
            quadrature_tolerance: 1e-8,
            quadrature_budget: 1_000_000,
            crowded_density_per_m2: 3.0,
            hand_distance_m: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StateSection {
    pub pl_exponent: f64,
    pub pl_intercept_db: f64,
    pub shadow_shape: f64,
    pub shadow_scale: f64,
    pub nakagami_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelRowSection {
    pub los: StateSection,
    pub nlos: StateSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub hand: ChannelRowSection,
    pub pocket: ChannelRowSection,
}

fn state_section(p: &StateParams) -> StateSection {
    StateSection {
        pl_exponent: p.pl_exponent,
        pl_intercept_db: p.pl_intercept_db,
        shadow_shape: p.shadow_shape,
        shadow_scale: p.shadow_scale,
        nakagami_m: p.nakagami_m,
    }
}

impl Default for ChannelRowSection {
    fn default() -> Self {
        let hand = ChannelParams::carpark_hand();
        Self { los: state_section(&hand.los), nlos: state_section(&hand.nlos) }
    }
}

impl Default for StateSection {
    fn default() -> Self {
        state_section(&ChannelParams::carpark_hand().los)
    }
}

impl Default for ChannelSection {
    fn default() -> Self {
        let hand = ChannelParams::carpark_hand();
        let pocket = ChannelParams::carpark_pocket();
        Self {
            hand: ChannelRowSection {
                los: state_section(&hand.los),
                nlos: state_section(&hand.nlos),
            },
            pocket: ChannelRowSection {
                los: state_section(&pocket.los),
                nlos: state_section(&pocket.nlos),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum UePlacementSection {
    Uniform,
    Fixed { x_m: f64, y_m: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub trials: u64,
    pub seed: u64,
    pub scenarios: Vec<String>,
    pub deltas_m: Vec<f64>,
    pub ap_beamwidths_deg: Vec<f64>,
    pub ue_beamwidths_deg: Vec<f64>,
    pub ue_placement: UePlacementSection,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            trials: 20_000,
            seed: 1,
            scenarios: vec!["empty-hand".to_string()],
            deltas_m: vec![20.0],
            ap_beamwidths_deg: vec![28.0],
            ue_beamwidths_deg: vec![45.0],
            ue_placement: UePlacementSection::Uniform,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BlockageProbSection {
    pub user_body_distance_m: f64,
    /// Number of uniformly placed random bodies in the venue.
    pub rb_count: u64,
    pub d_max_m: f64,
    pub d_step_m: f64,
    /// Scene redraws used by `--validate`.
    pub scenes: u64,
}

impl Default for BlockageProbSection {
    fn default() -> Self {
        Self {
            user_body_distance_m: 0.3,
            rb_count: 0,
            d_max_m: 100.0,
            d_step_m: 2.0,
            scenes: 100_000,
        }
    }
}

/// Reads, overrides and validates a configuration.
pub fn load(
    path: Option<&Path>,
    overrides: &[String],
    seed: Option<u64>,
) -> Result<FileConfig, AppError> {
    let mut value = match path {
        None => Value::Object(Default::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| AppError::config(format!("cannot read {}: {e}", p.display())))?;
            if text.trim().is_empty() {
                return Err(AppError::config(format!(
                    "configuration file {} is empty; expected a JSON object whose keys (all \
                     optional) are: {TOP_LEVEL_KEYS}",
                    p.display()
                )));
            }
            serde_json::from_str(&text)
                .map_err(|e| AppError::config(format!("{}: {e}", p.display())))?
        }
    };
    for entry in overrides {
        apply_override(&mut value, entry)?;
    }
    let mut config: FileConfig = serde_json::from_value(value)
        .map_err(|e| AppError::config(format!("configuration error: {e}")))?;
    if let Some(seed) = seed {
        config.run.seed = seed;
    }
    Ok(config)
}

/// Applies one `section.key=value` override onto the JSON tree. The value is
/// parsed as JSON when possible and kept as a string otherwise.
fn apply_override(root: &mut Value, entry: &str) -> Result<(), AppError> {
    let (path, raw) = entry
        .split_once('=')
        .ok_or_else(|| AppError::config(format!("override '{entry}' must look like key=value")))?;
    if path.is_empty() {
        return Err(AppError::config(format!("override '{entry}' has an empty key")));
    }
    let parsed: Value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let map = node.as_object_mut().ok_or_else(|| {
            AppError::config(format!("override '{path}': '{}' is not a section", parts[..i].join(".")))
        })?;
        if i + 1 == parts.len() {
            map.insert(part.to_string(), parsed);
            return Ok(());
        }
        node = map
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("overrides always terminate on the last path segment");
}

impl FileConfig {
    pub fn venue(&self) -> Result<Venue, AppError> {
        Venue::new(self.venue.side_m).map_err(AppError::from)
    }

    fn side_lobe_linear(&self) -> f64 {
        10f64.powf(self.antennas.side_lobe_gain_db / 10.0)
    }

    fn state_params(s: &StateSection) -> Result<StateParams, AppError> {
        StateParams::new(
            s.pl_exponent,
            s.pl_intercept_db,
            s.shadow_shape,
            s.shadow_scale,
            s.nakagami_m,
        )
        .map_err(AppError::from)
    }

    fn channel_row(row: &ChannelRowSection) -> Result<ChannelParams, AppError> {
        Ok(ChannelParams::new(
            Self::state_params(&row.los)?,
            Self::state_params(&row.nlos)?,
        ))
    }

    pub fn scenario_table(&self) -> Result<ScenarioTable, AppError> {
        Ok(ScenarioTable {
            hand_channel: Self::channel_row(&self.channel.hand)?,
            pocket_channel: Self::channel_row(&self.channel.pocket)?,
            hand_distance: self.blockage.hand_distance_m,
            pocket_distance: 0.0,
            crowded_density: self.blockage.crowded_density_per_m2,
        })
    }

    pub fn scenarios(&self) -> Result<Vec<Scenario>, AppError> {
        if self.run.scenarios.is_empty() {
            return Err(AppError::config("run.scenarios must not be empty"));
        }
        self.run
            .scenarios
            .iter()
            .map(|label| {
                Scenario::from_label(label).ok_or_else(|| {
                    AppError::config(format!(
                        "unknown scenario '{label}'; expected one of: empty-hand, empty-pocket, \
                         crowded-hand, crowded-pocket"
                    ))
                })
            })
            .collect()
    }

    /// Base engine configuration; per-point delta/beamwidths/scenario are
    /// substituted by the sweep machinery.
    pub fn base_simulation(&self) -> Result<SimulationConfig, AppError> {
        let venue = self.venue()?;
        let delta = *self
            .run
            .deltas_m
            .first()
            .ok_or_else(|| AppError::config("run.deltas_m must not be empty"))?;
        let first_ap = *self
            .run
            .ap_beamwidths_deg
            .first()
            .ok_or_else(|| AppError::config("run.ap_beamwidths_deg must not be empty"))?;
        let first_ue = *self
            .run
            .ue_beamwidths_deg
            .first()
            .ok_or_else(|| AppError::config("run.ue_beamwidths_deg must not be empty"))?;
        let geometry = BodyGeometry::new(
            self.body.width_m,
            self.body.height_above_ue_m,
            self.blockage.hand_distance_m,
        )?;
        let blockage = BlockageModel::with_quadrature(
            geometry,
            0.0,
            BlockageMode::Analytic,
            self.blockage.quadrature_tolerance,
            self.blockage.quadrature_budget,
        )?;
        let ue_placement = match self.run.ue_placement {
            UePlacementSection::Uniform => UePlacement::UniformInVenue,
            UePlacementSection::Fixed { x_m, y_m } => {
                UePlacement::FixedPoint(Point2::new(x_m, y_m))
            }
        };
        Ok(SimulationConfig {
            venue,
            delta,
            ap_height: self.deployment.ap_height_m,
            ap_pattern: AntennaPattern::new(first_ap.to_radians(), self.side_lobe_linear())?,
            ue_pattern: AntennaPattern::new(first_ue.to_radians(), self.side_lobe_linear())?,
            blockage,
            channel: Self::channel_row(&self.channel.hand)?,
            radio: RadioConfig::new(
                self.radio.tx_power_dbm,
                self.radio.bandwidth_hz,
                self.radio.carrier_hz,
                self.radio.noise_figure_db,
                self.radio.sinr_threshold_db,
            )?,
            trials: self.run.trials,
            seed: self.run.seed,
            ue_placement,
            association_excludes_fading: true,
            serving_always_main_lobe: self.antennas.serving_always_main_lobe,
            scenario_label: "empty-hand".to_string(),
        })
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec, AppError> {
        Ok(SweepSpec {
            deltas: self.run.deltas_m.clone(),
            ap_beamwidths: self
                .run
                .ap_beamwidths_deg
                .iter()
                .map(|d| d.to_radians())
                .collect(),
            ue_beamwidths: self
                .run
                .ue_beamwidths_deg
                .iter()
                .map(|d| d.to_radians())
                .collect(),
            scenarios: self.scenarios()?,
        })
    }

    /// Blockage model of the `blockage-prob` command. The random-body count
    /// is translated to a density so the engine recovers it by rounding.
    pub fn blockage_prob_model(&self, mode: BlockageMode) -> Result<BlockageModel, AppError> {
        let geometry = BodyGeometry::new(
            self.body.width_m,
            self.body.height_above_ue_m,
            self.blockage_prob.user_body_distance_m,
        )?;
        let side = self.venue.side_m;
        let density = self.blockage_prob.rb_count as f64 / (side * side);
        BlockageModel::with_quadrature(
            geometry,
            density,
            mode,
            self.blockage.quadrature_tolerance,
            self.blockage.quadrature_budget,
        )
        .map_err(AppError::from)
    }

    /// Distance grid of the `blockage-prob` command: 0, step, ..., up to and
    /// including d_max.
    pub fn blockage_prob_grid(&self) -> Result<Vec<f64>, AppError> {
        let step = self.blockage_prob.d_step_m;
        let max = self.blockage_prob.d_max_m;
        if !(step > 0.0) || !(max > 0.0) {
            return Err(AppError::config(
                "blockage_prob.d_step_m and d_max_m must be positive",
            ));
        }
        let n = (max / step).round() as usize;
        Ok((0..=n).map(|k| k as f64 * step).collect())
    }
}

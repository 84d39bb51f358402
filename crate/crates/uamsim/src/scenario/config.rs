//! Run configuration, loaded from a TOML file.

use super::ScenarioError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Tuning knobs for a full run. The top-level keys are stable and match the
/// config file one for one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Fraction of eligible ground trips promoted to air per iteration,
    /// in (0, 1].
    pub beta_promotion: f64,
    /// Iteration index after which promotion also requires an estimated
    /// air-time benefit.
    pub promotion_index_threshold: u32,
    /// Equilibrium stops once switched trips / total trips falls below this.
    pub convergence_tolerance: f64,
    /// Headline time-saving threshold for the benefit report, seconds.
    pub time_saving_threshold: u32,
    /// Runway operation separation used when an airport does not set its
    /// own, seconds.
    pub separation_default: f64,
    /// Volume-averaging rounds per ground assignment.
    pub assignment_iterations: u32,
    pub random_seed: u64,

    /// Hard cap on equilibrium iterations before giving up.
    #[serde(default = "default_iteration_cap")]
    pub iteration_cap: u32,
    /// Slack added to the promotion eligibility test, seconds. Ground times
    /// hover around the driving baseline, so a small buffer keeps averaging
    /// noise from churning trips between modes.
    #[serde(default = "default_eligibility_slack")]
    pub eligibility_slack_s: f64,
    /// Aircraft separation requirement between successive runway
    /// operations, seconds.
    #[serde(default = "default_asr")]
    pub asr_s: f64,
    /// When true, the driving-time baseline uses free-flow link times
    /// instead of the congested all-ground assignment.
    #[serde(default)]
    pub baseline_free_flow: bool,
    /// When true, promotion picks a seeded-random subset of eligible trips
    /// instead of the largest-benefit ones.
    #[serde(default)]
    pub promotion_random: bool,
    /// When true, fleet transitions may hand a smaller type's task to a
    /// larger aircraft.
    #[serde(default)]
    pub downward_substitution: bool,
    /// When true, the flight profile keeps the published climb distance
    /// (12.79 mi) instead of recomputing it from climb speed and rate.
    #[serde(default = "default_true")]
    pub paper_compat_d1: bool,
    /// Time-saving thresholds for the benefit curve, seconds.
    #[serde(default = "default_threshold_grid")]
    pub threshold_grid_s: Vec<u32>,
    /// Emit per-link volumes alongside the standard reports.
    #[serde(default)]
    pub dump_link_volumes: bool,
    /// How node coordinates are interpreted.
    #[serde(default)]
    pub coord_mode: super::CoordMode,

    /// Overrides for the shared flight profile.
    #[serde(default)]
    pub flight_profile: FlightProfileConfig,
    /// Per-airport ground-hold capacity; airports absent here are
    /// unlimited.
    #[serde(default)]
    pub hold_capacity: BTreeMap<String, u32>,

    /// Input CSV locations, resolved relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<ScenarioPaths>,
    /// Synthetic scenario dimensions, used when no paths are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthetic: Option<SyntheticSpec>,
}

fn default_iteration_cap() -> u32 {
    100
}

fn default_eligibility_slack() -> f64 {
    60.0
}

fn default_asr() -> f64 {
    60.0
}

fn default_true() -> bool {
    true
}

fn default_threshold_grid() -> Vec<u32> {
    (0..=6).map(|i| i * 300).collect()
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            beta_promotion: 0.4,
            promotion_index_threshold: 3,
            convergence_tolerance: 0.005,
            time_saving_threshold: 1200,
            separation_default: 180.0,
            assignment_iterations: 6,
            random_seed: 7,
            iteration_cap: default_iteration_cap(),
            eligibility_slack_s: default_eligibility_slack(),
            asr_s: default_asr(),
            baseline_free_flow: false,
            promotion_random: false,
            downward_substitution: false,
            paper_compat_d1: true,
            threshold_grid_s: default_threshold_grid(),
            dump_link_volumes: false,
            coord_mode: super::CoordMode::default(),
            flight_profile: FlightProfileConfig::default(),
            hold_capacity: BTreeMap::new(),
            paths: None,
            synthetic: None,
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml_path(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|_| ScenarioError::MissingFile(path.to_path_buf()))?;
        let mut config: ScenarioConfig =
            toml::from_str(&text).map_err(|e| ScenarioError::SchemaViolation {
                file: path.display().to_string(),
                row: e
                    .span()
                    .map(|s| text[..s.start].lines().count())
                    .unwrap_or(0),
                column: "-".to_string(),
                message: e.message().to_string(),
            })?;
        config.validate()?;
        if let Some(paths) = &mut config.paths {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            paths.resolve_relative_to(base);
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.beta_promotion > 0.0 && self.beta_promotion <= 1.0) {
            return Err(ScenarioError::InvariantViolation(format!(
                "beta_promotion must lie in (0, 1], got {}",
                self.beta_promotion
            )));
        }
        if self.convergence_tolerance <= 0.0 {
            return Err(ScenarioError::InvariantViolation(format!(
                "convergence_tolerance must be positive, got {}",
                self.convergence_tolerance
            )));
        }
        if self.assignment_iterations < 1 {
            return Err(ScenarioError::InvariantViolation(
                "assignment_iterations must be at least 1".to_string(),
            ));
        }
        if self.asr_s <= 0.0 {
            return Err(ScenarioError::InvariantViolation(format!(
                "asr_s must be positive, got {}",
                self.asr_s
            )));
        }
        Ok(())
    }
}

/// Flight profile parameters; any field left unset falls back to the
/// built-in profile.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlightProfileConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub climb_speed_mph: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_speed_mph: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cruise_speed_mph: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cruise_altitude_ft: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub climb_rate_fpm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_rate_fpm: Option<f64>,
}

/// Input CSV locations for a loaded scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioPaths {
    pub nodes: PathBuf,
    pub links: PathBuf,
    pub airports: PathBuf,
    pub aircraft: PathBuf,
    pub demand: PathBuf,
}

impl ScenarioPaths {
    fn resolve_relative_to(&mut self, base: &Path) {
        for p in [
            &mut self.nodes,
            &mut self.links,
            &mut self.airports,
            &mut self.aircraft,
            &mut self.demand,
        ] {
            if p.is_relative() {
                *p = base.join(&p);
            }
        }
    }
}

/// Dimensions for [`generate_synthetic_scenario`](super::generate_synthetic_scenario).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub nodes: u32,
    pub airports: u32,
    pub trips: u32,
}

//! Run configuration: a TOML file of optional sections whose defaults
//! reproduce the reference constants (baselines 6.045/1.16 GW, gas intensity
//! 4.87 Mt/GW, axes 30/40/50 × 1..10 × 0,2,4,6,8, targets 0.7/0.5/0.3).

use std::path::{Path, PathBuf};

use serde::Deserialize;

use headroom_core::dynamics::{StorageLedger, MACKAY_SLEW_COEFFICIENT};
use headroom_core::scenario::EmissionsConfig;
use headroom_core::{Baselines, GridAxes, SynthSpec};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub data: DataConfig,
    #[serde(default)]
    pub synth: SynthConfig,
    #[serde(default)]
    pub baselines: BaselinesConfig,
    #[serde(default)]
    pub emissions: EmissionsSection,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub efficiency: EfficiencyConfig,
    /// Efficiency targets for planning and lookup tables.
    #[serde(default = "default_targets")]
    pub targets: Vec<f64>,
    #[serde(default)]
    pub scenarios: Vec<ScenarioSpec>,
    #[serde(default)]
    pub dynamics: DynamicsConfig,
    #[serde(default)]
    pub storage: StorageConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_targets() -> Vec<f64> {
    vec![0.7, 0.5, 0.3]
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataConfig {
    pub csv: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub synth_seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub wind_seasonal_amplitude: f64,
    pub wind_weekly_means: Option<Vec<f64>>,
    pub wind_variability: f64,
    pub wind_correlation_hours: f64,
    pub solar_peak_sharpness: f64,
    pub solar_seasonal_amplitude: f64,
    pub solar_weather_variability: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        let d = SynthSpec::default();
        SynthConfig {
            wind_seasonal_amplitude: 0.35,
            wind_weekly_means: None,
            wind_variability: d.wind_variability,
            wind_correlation_hours: d.wind_correlation_hours,
            solar_peak_sharpness: d.solar_peak_sharpness,
            solar_seasonal_amplitude: d.solar_seasonal_amplitude,
            solar_weather_variability: d.solar_weather_variability,
        }
    }
}

impl SynthConfig {
    pub fn to_spec(&self, baselines: Baselines) -> SynthSpec {
        let wind_weekly_means = self.wind_weekly_means.clone().unwrap_or_else(|| {
            (0..52)
                .map(|w| {
                    1.0 + self.wind_seasonal_amplitude
                        * (std::f64::consts::TAU * (w as f64 - 1.5) / 52.0).cos()
                })
                .collect()
        });
        SynthSpec {
            wind_weekly_means,
            wind_variability: self.wind_variability,
            wind_correlation_hours: self.wind_correlation_hours,
            solar_peak_sharpness: self.solar_peak_sharpness,
            solar_seasonal_amplitude: self.solar_seasonal_amplitude,
            solar_weather_variability: self.solar_weather_variability,
            baselines,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselinesConfig {
    pub wind_gw: f64,
    pub solar_gw: f64,
}

impl Default for BaselinesConfig {
    fn default() -> Self {
        let b = Baselines::default();
        BaselinesConfig {
            wind_gw: b.wind_gw,
            solar_gw: b.solar_gw,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmissionsSection {
    pub ccgt_mtes_pa_per_gw: f64,
}

impl Default for EmissionsSection {
    fn default() -> Self {
        EmissionsSection {
            ccgt_mtes_pa_per_gw: EmissionsConfig::default().ccgt_mtes_pa_per_gw,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub hdrm: Vec<f64>,
    pub wm: Vec<f64>,
    pub sm: Vec<f64>,
}

impl Default for GridConfig {
    fn default() -> Self {
        let axes = GridAxes::default();
        GridConfig {
            hdrm: axes.hdrm,
            wm: axes.wm,
            sm: axes.sm,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EfficiencyConfig {
    pub delta_wm: f64,
    pub delta_sm: f64,
}

impl Default for EfficiencyConfig {
    fn default() -> Self {
        EfficiencyConfig {
            delta_wm: headroom_core::efficiency::DEFAULT_DELTA,
            delta_sm: headroom_core::efficiency::DEFAULT_DELTA,
        }
    }
}

/// One scenario row: either explicit fleet multipliers or an efficiency
/// target resolved through the lookup tables.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub label: String,
    pub hdrm: Option<f64>,
    pub wm: Option<f64>,
    pub sm: Option<f64>,
    pub target: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicsConfig {
    /// Headroom for scenario and dynamics runs without an explicit value.
    pub hdrm: f64,
    pub mackay_coefficient: f64,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            hdrm: 48.5,
            mackay_coefficient: MACKAY_SLEW_COEFFICIENT,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StorageConfig {
    /// `[["grid storage", 140.0], ...]`; defaults to the reference ledger.
    pub sources: Option<Vec<(String, f64)>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            // run the empty document through serde so field defaults apply
            return Ok(toml::from_str("").expect("empty config is valid"));
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let config: RunConfig = toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("malformed config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        let sources = [
            self.data.csv.is_some(),
            self.data.cache.is_some(),
            self.data.synth_seed.is_some(),
        ];
        if sources.iter().filter(|s| **s).count() > 1 {
            return Err(CliError::Usage(
                "config [data] must set at most one of csv, cache, synth_seed".into(),
            ));
        }
        if self.targets.is_empty() {
            return Err(CliError::Usage("targets must not be empty".into()));
        }
        if let Some(sources) = &self.storage.sources {
            if sources
                .iter()
                .any(|(_, gwh)| !gwh.is_finite() || *gwh < 0.0)
            {
                return Err(CliError::Usage("storage capacities must be >= 0".into()));
            }
        }
        for spec in &self.scenarios {
            let explicit = spec.wm.is_some() && spec.sm.is_some();
            let by_target = spec.target.is_some();
            if explicit == by_target {
                return Err(CliError::Usage(format!(
                    "scenario {:?} must set either wm+sm or target",
                    spec.label
                )));
            }
        }
        Ok(())
    }

    pub fn baselines(&self) -> Baselines {
        Baselines {
            wind_gw: self.baselines.wind_gw,
            solar_gw: self.baselines.solar_gw,
        }
    }

    pub fn emissions(&self) -> EmissionsConfig {
        EmissionsConfig {
            ccgt_mtes_pa_per_gw: self.emissions.ccgt_mtes_pa_per_gw,
            baselines: self.baselines(),
        }
    }

    pub fn axes(&self) -> GridAxes {
        GridAxes {
            hdrm: self.grid.hdrm.clone(),
            wm: self.grid.wm.clone(),
            sm: self.grid.sm.clone(),
        }
    }

    pub fn storage_ledger(&self) -> StorageLedger {
        match &self.storage.sources {
            Some(sources) => StorageLedger {
                sources: sources.clone(),
            },
            None => StorageLedger::default(),
        }
    }

    /// The five reference scenarios at hdrm 48.5 when the config lists none.
    pub fn scenarios_or_default(&self) -> Vec<ScenarioSpec> {
        if !self.scenarios.is_empty() {
            return self.scenarios.clone();
        }
        let fixed = |label: &str, wm: f64, sm: f64| ScenarioSpec {
            label: label.into(),
            hdrm: None,
            wm: Some(wm),
            sm: Some(sm),
            target: None,
        };
        let by_target = |label: &str, target: f64| ScenarioSpec {
            label: label.into(),
            hdrm: None,
            wm: None,
            sm: None,
            target: Some(target),
        };
        vec![
            fixed("A", 0.0, 0.0),
            by_target("B", 0.7),
            by_target("C", 0.5),
            by_target("D", 0.3),
            fixed("E", 8.96, 6.1),
        ]
    }
}

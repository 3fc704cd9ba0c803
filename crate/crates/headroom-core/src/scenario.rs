//! Emissions and decarbonisation analysis of candidate fleet configurations.

use crate::efficiency;
use crate::model::{evaluate, Scenario};
use crate::tables::{interp_gw_ws, Lattice};
use crate::traces::{Baselines, WeeklyTraceSet};
use crate::{Error, Result};

/// Emission accounting constants. The default intensity is the gas-turbine
/// figure of 4.87 Mt CO₂ per annum per average GW dispatched.
#[derive(Debug, Clone, Copy)]
pub struct EmissionsConfig {
    pub ccgt_mtes_pa_per_gw: f64,
    pub baselines: Baselines,
}

impl Default for EmissionsConfig {
    fn default() -> Self {
        EmissionsConfig {
            ccgt_mtes_pa_per_gw: 4.87,
            baselines: Baselines::default(),
        }
    }
}

impl EmissionsConfig {
    pub fn validate(&self) -> Result<()> {
        self.baselines.validate()?;
        if !self.ccgt_mtes_pa_per_gw.is_finite() || self.ccgt_mtes_pa_per_gw <= 0.0 {
            return Err(Error::invalid(
                "emissions config",
                "ccgt intensity must be > 0",
            ));
        }
        Ok(())
    }
}

/// Where a report's accommodated generation comes from.
pub enum AccommodatedSource<'a> {
    /// A value computed elsewhere (e.g. a published table row).
    Fixed(f64),
    /// Trilinear interpolation in an accommodated-generation lattice.
    Grid(&'a Lattice),
    /// Direct model evaluation on a trace set.
    Model(&'a WeeklyTraceSet),
}

/// Derived annual figures for one fleet configuration.
#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub label: String,
    /// The efficiency target this configuration was sized for, if any.
    pub target: Option<f64>,
    pub hdrm: f64,
    pub wm: f64,
    pub sm: f64,
    pub gw_wind: f64,
    pub gw_solar: f64,
    pub available: f64,
    pub accommodated: f64,
    pub curtailed: f64,
    pub dispatchable: f64,
    pub emissions_mtes_pa: f64,
    pub iwe: Option<f64>,
    pub ise: Option<f64>,
}

/// Build the report for one configuration.
pub fn analyze_scenario(
    label: impl Into<String>,
    scenario: &Scenario,
    source: AccommodatedSource<'_>,
    config: &EmissionsConfig,
) -> Result<ScenarioReport> {
    scenario.validate()?;
    config.validate()?;
    let accommodated = match source {
        AccommodatedSource::Fixed(v) => v,
        // an empty fleet accommodates nothing; lattices need not cover it
        AccommodatedSource::Grid(_) if scenario.wm == 0.0 && scenario.sm == 0.0 => 0.0,
        AccommodatedSource::Grid(lattice) => interp_gw_ws(lattice, scenario)?,
        AccommodatedSource::Model(traces) => evaluate(traces, scenario)?.accommodated,
    };
    if !(0.0..=scenario.hdrm).contains(&accommodated) {
        return Err(Error::invalid(
            "accommodated",
            format!("{accommodated} outside [0, hdrm={}]", scenario.hdrm),
        ));
    }
    let gw_wind = scenario.wm * config.baselines.wind_gw;
    let gw_solar = scenario.sm * config.baselines.solar_gw;
    let available = gw_wind + gw_solar;
    let dispatchable = scenario.hdrm - accommodated;
    Ok(ScenarioReport {
        label: label.into(),
        target: None,
        hdrm: scenario.hdrm,
        wm: scenario.wm,
        sm: scenario.sm,
        gw_wind,
        gw_solar,
        available,
        accommodated,
        curtailed: available - accommodated,
        dispatchable,
        emissions_mtes_pa: config.ccgt_mtes_pa_per_gw * dispatchable,
        iwe: None,
        ise: None,
    })
}

impl ScenarioReport {
    /// Re-evaluate both incremental efficiencies through the model.
    pub fn with_recalculated_efficiencies(
        mut self,
        traces: &WeeklyTraceSet,
        delta_wm: f64,
        delta_sm: f64,
    ) -> Result<Self> {
        let s = Scenario::new(self.hdrm, self.wm, self.sm)?;
        self.iwe = Some(efficiency::incremental_wind_efficiency(
            traces, &s, delta_wm,
        )?);
        self.ise = Some(efficiency::incremental_solar_efficiency(
            traces, &s, delta_sm,
        )?);
        Ok(self)
    }
}

/// One step of the decarbonisation ladder between consecutive reports.
#[derive(Debug, Clone)]
pub struct DecarbStep {
    pub from_label: String,
    pub to_label: String,
    pub emission_reduction_mtes_pa: f64,
    pub added_generation_gw: f64,
    /// Emission reduction per GW of added available generation.
    pub efficiency: f64,
}

/// Emission reduction per GW of added generation between consecutive
/// reports, which must be ordered by increasing available generation.
pub fn decarb_ladder(reports: &[ScenarioReport]) -> Result<Vec<DecarbStep>> {
    if reports.len() < 2 {
        return Err(Error::invalid("decarb ladder", "need at least two reports"));
    }
    let mut steps = Vec::with_capacity(reports.len() - 1);
    for pair in reports.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let added = b.available - a.available;
        if added <= 0.0 {
            return Err(Error::invalid(
                "decarb ladder",
                format!("no added generation between {} and {}", a.label, b.label),
            ));
        }
        let reduction = a.emissions_mtes_pa - b.emissions_mtes_pa;
        steps.push(DecarbStep {
            from_label: a.label.clone(),
            to_label: b.label.clone(),
            emission_reduction_mtes_pa: reduction,
            added_generation_gw: added,
            efficiency: reduction / added,
        });
    }
    Ok(steps)
}

/// Convert installed capacities and load factors to a wind multiplier:
/// `(onshore·lf + offshore·lf) / wind_base`.
pub fn capacity_to_wm(
    onshore_gw: f64,
    onshore_lf: f64,
    offshore_gw: f64,
    offshore_lf: f64,
    wind_base: f64,
) -> Result<f64> {
    if !wind_base.is_finite() || wind_base <= 0.0 {
        return Err(Error::invalid(
            "wind_base",
            format!("{wind_base} must be > 0"),
        ));
    }
    for (name, v) in [
        ("onshore capacity", onshore_gw),
        ("offshore capacity", offshore_gw),
    ] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::invalid(
                "capacity",
                format!("{name} {v} must be >= 0"),
            ));
        }
    }
    for (name, lf) in [("onshore", onshore_lf), ("offshore", offshore_lf)] {
        if !lf.is_finite() || lf <= 0.0 || lf > 1.0 {
            return Err(Error::invalid(
                "load factor",
                format!("{name} load factor {lf} not in (0, 1]"),
            ));
        }
    }
    Ok((onshore_gw * onshore_lf + offshore_gw * offshore_lf) / wind_base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fixed_report(label: &str, wm: f64, sm: f64, accommodated: f64) -> ScenarioReport {
        analyze_scenario(
            label,
            &Scenario::new(48.5, wm, sm).unwrap(),
            AccommodatedSource::Fixed(accommodated),
            &EmissionsConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn all_gas_baseline() {
        let r = fixed_report("A", 0.0, 0.0, 0.0);
        assert_abs_diff_eq!(r.dispatchable, 48.5);
        assert_abs_diff_eq!(r.emissions_mtes_pa, 236.195, epsilon = 1e-9);
    }

    #[test]
    fn mid_efficiency_scenario_derivations() {
        let r = fixed_report("C", 5.16, 5.69, 33.77);
        assert_abs_diff_eq!(r.available, 37.7926, epsilon = 2e-2);
        assert_abs_diff_eq!(r.curtailed, 4.0226, epsilon = 2e-2);
        assert_abs_diff_eq!(r.dispatchable, 14.73, epsilon = 1e-9);
        assert_abs_diff_eq!(r.emissions_mtes_pa, 71.7351, epsilon = 2e-2);
    }

    #[test]
    fn planned_2035_scenario_derivations() {
        let r = fixed_report("E", 8.96, 6.1, 41.06);
        assert_abs_diff_eq!(r.dispatchable, 7.44, epsilon = 1e-9);
        assert_abs_diff_eq!(r.emissions_mtes_pa, 36.2328, epsilon = 2e-2);
        assert_abs_diff_eq!(r.curtailed, 20.1792, epsilon = 2e-2);
    }

    #[test]
    fn inconsistent_accommodated_rejected() {
        let err = analyze_scenario(
            "bad",
            &Scenario::new(48.5, 1.0, 1.0).unwrap(),
            AccommodatedSource::Fixed(50.0),
            &EmissionsConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invalid { .. }));
    }

    #[test]
    fn ladder_matches_reference_rows() {
        let reports = vec![
            fixed_report("A", 0.0, 0.0, 0.0),
            fixed_report("B", 4.25, 4.64, 29.76),
            fixed_report("C", 5.16, 5.69, 33.77),
            fixed_report("D", 6.87, 6.77, 38.29),
            fixed_report("E", 8.96, 6.10, 41.06),
        ];
        let steps = decarb_ladder(&reports).unwrap();
        let expected = [4.66, 2.91, 1.90, 1.14];
        for (step, want) in steps.iter().zip(expected) {
            assert_abs_diff_eq!(step.efficiency, want, epsilon = 1e-2);
            assert!(step.efficiency <= 4.87);
        }
        assert!(steps.windows(2).all(|w| w[0].efficiency > w[1].efficiency));
    }

    #[test]
    fn identical_reports_are_a_zero_denominator() {
        let r = fixed_report("X", 2.0, 2.0, 10.0);
        assert!(decarb_ladder(&[r.clone(), r]).is_err());
    }

    #[test]
    fn emissions_scale_with_intensity() {
        let doubled = EmissionsConfig {
            ccgt_mtes_pa_per_gw: 2.0 * 4.87,
            ..Default::default()
        };
        let base = fixed_report("C", 5.16, 5.69, 33.77);
        let two = analyze_scenario(
            "C",
            &Scenario::new(48.5, 5.16, 5.69).unwrap(),
            AccommodatedSource::Fixed(33.77),
            &doubled,
        )
        .unwrap();
        assert_abs_diff_eq!(
            two.emissions_mtes_pa,
            2.0 * base.emissions_mtes_pa,
            epsilon = 1e-12
        );
    }

    #[test]
    fn capacity_conversion() {
        assert_abs_diff_eq!(
            capacity_to_wm(15.0, 0.3, 50.0, 0.45, 6.045).unwrap(),
            4.466,
            epsilon = 1e-3
        );
        assert_eq!(capacity_to_wm(0.0, 0.3, 0.0, 0.45, 6.045).unwrap(), 0.0);
        assert_abs_diff_eq!(
            capacity_to_wm(6.045, 1.0, 0.0, 0.5, 6.045).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert!(capacity_to_wm(1.0, 0.0, 1.0, 0.5, 6.045).is_err());
        assert!(capacity_to_wm(1.0, 0.5, 1.0, 0.5, 0.0).is_err());
    }
}

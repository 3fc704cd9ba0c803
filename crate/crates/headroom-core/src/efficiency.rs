//! Incremental wind and solar efficiencies.
//!
//! The incremental efficiency of a fleet is the fraction of a marginal fleet
//! increment's output that the system accommodates: a forward difference of
//! accommodated generation with respect to the fleet multiplier, normalized
//! by the increment's available output.

use crate::model::{evaluate, Scenario};
use crate::traces::WeeklyTraceSet;
use crate::{Error, Result};

/// Default forward-difference step, in fleet-multiplier units.
pub const DEFAULT_DELTA: f64 = 0.01;

/// The two incremental efficiencies at one scenario.
#[derive(Debug, Clone, Copy)]
pub struct EfficiencyPoint {
    pub scenario: Scenario,
    pub iwe: f64,
    pub ise: f64,
    pub delta_wm: f64,
    pub delta_sm: f64,
}

/// Incremental wind efficiency:
/// `[accommodated(wm+delta) − accommodated(wm)] / (delta × wind_base)`.
pub fn incremental_wind_efficiency(
    traces: &WeeklyTraceSet,
    scenario: &Scenario,
    delta_wm: f64,
) -> Result<f64> {
    if !delta_wm.is_finite() || delta_wm <= 0.0 {
        return Err(Error::invalid(
            "delta_wm",
            format!("{delta_wm} must be > 0"),
        ));
    }
    let base = evaluate(traces, scenario)?.accommodated;
    let bumped = evaluate(
        traces,
        &Scenario {
            wm: scenario.wm + delta_wm,
            ..*scenario
        },
    )?
    .accommodated;
    Ok((bumped - base) / (delta_wm * traces.baselines().wind_gw))
}

/// Incremental solar efficiency:
/// `[accommodated(sm+delta) − accommodated(sm)] / (delta × solar_base)`.
pub fn incremental_solar_efficiency(
    traces: &WeeklyTraceSet,
    scenario: &Scenario,
    delta_sm: f64,
) -> Result<f64> {
    if !delta_sm.is_finite() || delta_sm <= 0.0 {
        return Err(Error::invalid(
            "delta_sm",
            format!("{delta_sm} must be > 0"),
        ));
    }
    let base = evaluate(traces, scenario)?.accommodated;
    let bumped = evaluate(
        traces,
        &Scenario {
            sm: scenario.sm + delta_sm,
            ..*scenario
        },
    )?
    .accommodated;
    Ok((bumped - base) / (delta_sm * traces.baselines().solar_gw))
}

/// Both efficiencies at one scenario.
pub fn efficiency_point(
    traces: &WeeklyTraceSet,
    scenario: &Scenario,
    delta_wm: f64,
    delta_sm: f64,
) -> Result<EfficiencyPoint> {
    Ok(EfficiencyPoint {
        scenario: *scenario,
        iwe: incremental_wind_efficiency(traces, scenario, delta_wm)?,
        ise: incremental_solar_efficiency(traces, scenario, delta_sm)?,
        delta_wm,
        delta_sm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traces::{Baselines, WeeklyTraceSet, SLOTS_PER_YEAR};
    use approx::assert_abs_diff_eq;

    fn two_level_wind() -> WeeklyTraceSet {
        let wind: Vec<f64> = (0..SLOTS_PER_YEAR)
            .map(|t| if t % 2 == 0 { 2.0 } else { 0.0 })
            .collect();
        let solar = vec![1.0; SLOTS_PER_YEAR];
        WeeklyTraceSet::from_units(wind, solar, Baselines::default()).unwrap()
    }

    /// wind 2/0 alternating, solar 0/2 in the opposite phase.
    fn complementary() -> WeeklyTraceSet {
        let wind: Vec<f64> = (0..SLOTS_PER_YEAR)
            .map(|t| if t % 2 == 0 { 2.0 } else { 0.0 })
            .collect();
        let solar: Vec<f64> = (0..SLOTS_PER_YEAR)
            .map(|t| if t % 2 == 0 { 0.0 } else { 2.0 })
            .collect();
        WeeklyTraceSet::from_units(wind, solar, Baselines::default()).unwrap()
    }

    #[test]
    fn no_curtailment_gives_unit_efficiencies() {
        let traces = WeeklyTraceSet::constant(Baselines::default());
        let s = Scenario::new(50.0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(
            incremental_wind_efficiency(&traces, &s, 0.01).unwrap(),
            1.0,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            incremental_solar_efficiency(&traces, &s, 0.01).unwrap(),
            1.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn saturated_fleet_gives_zero_efficiencies() {
        let traces = WeeklyTraceSet::constant(Baselines::default());
        // available = 60.45 GW at every slot against hdrm=30
        let s = Scenario::new(30.0, 10.0, 0.0).unwrap();
        assert_eq!(incremental_wind_efficiency(&traces, &s, 0.01).unwrap(), 0.0);
        assert_eq!(
            incremental_solar_efficiency(&traces, &s, 0.01).unwrap(),
            0.0
        );
    }

    #[test]
    fn two_level_increment_is_fully_curtailed() {
        // High slots already exceed hdrm, low slots have no wind: the
        // increment only raises the curtailed level, so iwe = 0.
        let traces = two_level_wind();
        let s = Scenario::new(30.0, 4.0, 0.0).unwrap();
        assert_eq!(incremental_wind_efficiency(&traces, &s, 0.01).unwrap(), 0.0);
    }

    #[test]
    fn solar_in_wind_lulls_is_fully_accommodated() {
        let traces = complementary();
        let s = Scenario::new(30.0, 4.0, 1.0).unwrap();
        let ise = incremental_solar_efficiency(&traces, &s, 0.01).unwrap();
        let iwe = incremental_wind_efficiency(&traces, &s, 0.01).unwrap();
        assert_abs_diff_eq!(ise, 1.0, epsilon = 1e-12);
        assert!(iwe < 1.0);
    }

    #[test]
    fn non_positive_deltas_rejected() {
        let traces = WeeklyTraceSet::constant(Baselines::default());
        let s = Scenario::new(30.0, 1.0, 1.0).unwrap();
        assert!(incremental_wind_efficiency(&traces, &s, 0.0).is_err());
        assert!(incremental_solar_efficiency(&traces, &s, -0.01).is_err());
    }
}

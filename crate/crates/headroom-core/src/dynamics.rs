//! Weekly dynamic analyses: deficit/excess energy accounting, slew-rate
//! detection and the static storage-adequacy comparison.

use crate::model::SlotSeries;
use crate::numeric::mean;
use crate::traces::SLOT_HOURS;
use crate::{Error, Result};

/// Shortest slew window considered: one 5-minute step.
pub const MIN_SLEW_SLOTS: usize = 1;
/// Longest slew window considered: 4 hours. Longer declines are weather
/// trends, not slews.
pub const MAX_SLEW_SLOTS: usize = 48;

/// Rate of decline of combined generation per GW of available generation,
/// per hour — the Irish 2007 wind-record estimate.
pub const MACKAY_SLEW_COEFFICIENT: f64 = 0.37;

/// A detected maximum-rate decline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlewEvent {
    /// Decline rate in GW/h (0 if the series never declines).
    pub rate_gw_per_h: f64,
    pub start_slot: usize,
    pub end_slot: usize,
}

/// Deficit/excess statistics of one analysed window.
#[derive(Debug, Clone)]
pub struct WeeklyDynamics {
    pub week: usize,
    pub span_hours: f64,
    pub mean_deficit: f64,
    pub max_deficit: f64,
    pub mean_excess: f64,
    pub max_excess: f64,
    pub deficit_energy_gwh: f64,
    pub excess_energy_gwh: f64,
    pub max_down_slew: SlewEvent,
}

/// Stored-energy sources compared against deficit energies, capacities
/// in GWh.
#[derive(Debug, Clone)]
pub struct StorageLedger {
    pub sources: Vec<(String, f64)>,
}

impl Default for StorageLedger {
    fn default() -> Self {
        StorageLedger {
            sources: vec![
                ("grid storage".into(), 140.0),
                ("pumped hydro".into(), 27.0),
                ("potential Scottish hydro".into(), 400.0),
                ("EV fleet V2G".into(), 1050.0),
            ],
        }
    }
}

impl StorageLedger {
    pub fn total_gwh(&self) -> f64 {
        self.sources.iter().map(|(_, c)| c).sum()
    }
}

/// Per-source and total coverage of a deficit; `None` when there is no
/// deficit to cover.
#[derive(Debug, Clone)]
pub struct AdequacyReport {
    pub deficit_energy_gwh: f64,
    pub per_source: Vec<(String, f64, Option<f64>)>,
    pub total_capacity_gwh: f64,
    pub total_coverage: Option<f64>,
}

/// Analyse one window of per-slot series (a week from the model, or any
/// other span with 5-minute cadence).
pub fn analyze_week(week: usize, series: &SlotSeries) -> Result<WeeklyDynamics> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let span_hours = series.len() as f64 * SLOT_HOURS;
    let excess: Vec<f64> = series
        .available
        .iter()
        .map(|a| (a - series.hdrm).max(0.0))
        .collect();
    let mean_deficit = mean(&series.deficit);
    let mean_excess = mean(&excess);
    Ok(WeeklyDynamics {
        week,
        span_hours,
        mean_deficit,
        max_deficit: series.deficit.iter().cloned().fold(0.0, f64::max),
        mean_excess,
        max_excess: excess.iter().cloned().fold(0.0, f64::max),
        deficit_energy_gwh: mean_deficit * span_hours,
        excess_energy_gwh: mean_excess * span_hours,
        max_down_slew: detect_max_down_slew(&series.available, MIN_SLEW_SLOTS, MAX_SLEW_SLOTS),
    })
}

/// Steepest decline over any window of `min_slots..=max_slots` samples:
/// maximises `(v[start] − v[end]) / window_hours`. Ties go to the earliest
/// start, then the longest window, so a uniform ramp reports the full event.
pub fn detect_max_down_slew(values: &[f64], min_slots: usize, max_slots: usize) -> SlewEvent {
    let mut best = SlewEvent {
        rate_gw_per_h: 0.0,
        start_slot: 0,
        end_slot: 0,
    };
    if values.len() < 2 {
        return best;
    }
    let min_slots = min_slots.max(1);
    for start in 0..values.len() - min_slots {
        let farthest = (start + max_slots).min(values.len() - 1);
        for end in (start + min_slots..=farthest).rev() {
            let hours = (end - start) as f64 * SLOT_HOURS;
            let rate = (values[start] - values[end]) / hours;
            if rate > best.rate_gw_per_h {
                best = SlewEvent {
                    rate_gw_per_h: rate,
                    start_slot: start,
                    end_slot: end,
                };
            }
        }
    }
    best
}

/// Like [`detect_max_down_slew`] for rising generation.
pub fn detect_max_up_slew(values: &[f64], min_slots: usize, max_slots: usize) -> SlewEvent {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    detect_max_down_slew(&negated, min_slots, max_slots)
}

/// The rule-of-thumb maximum slew for a given available generation:
/// `coefficient × available` GW/h.
pub fn mackay_slew_estimate(available_gw: f64, coefficient: f64) -> f64 {
    coefficient * available_gw.max(0.0)
}

/// Compare a deficit energy against the storage ledger.
pub fn storage_adequacy(deficit_energy_gwh: f64, ledger: &StorageLedger) -> AdequacyReport {
    let cover = |capacity: f64| {
        if deficit_energy_gwh > 0.0 {
            Some(capacity / deficit_energy_gwh)
        } else {
            None
        }
    };
    AdequacyReport {
        deficit_energy_gwh,
        per_source: ledger
            .sources
            .iter()
            .map(|(name, cap)| (name.clone(), *cap, cover(*cap)))
            .collect(),
        total_capacity_gwh: ledger.total_gwh(),
        total_coverage: cover(ledger.total_gwh()),
    }
}

/// Dispatchable reserve sized to the worst deficit, rounded up to 10 GW.
pub fn prudent_reserve_gw(max_deficit: f64) -> f64 {
    (max_deficit / 10.0).ceil() * 10.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn flat_series(available: f64, hdrm: f64, slots: usize) -> SlotSeries {
        SlotSeries::from_available(vec![available; slots], hdrm)
    }

    #[test]
    fn constant_deficit_energy_over_ten_days() {
        // 27.42 GW short for 240 h → 6580.8 GWh
        let series = flat_series(48.5 - 27.42, 48.5, 240 * 12);
        let d = analyze_week(3, &series).unwrap();
        assert_abs_diff_eq!(d.mean_deficit, 27.42, epsilon = 1e-9);
        assert_abs_diff_eq!(d.deficit_energy_gwh, 6580.8, epsilon = 1e-6);
        assert_eq!(d.max_down_slew.rate_gw_per_h, 0.0);
    }

    #[test]
    fn constant_excess_energy_over_a_week() {
        let series = flat_series(48.5 + 48.34, 48.5, 168 * 12);
        let d = analyze_week(52, &series).unwrap();
        assert_abs_diff_eq!(d.mean_excess, 48.34, epsilon = 1e-9);
        assert_abs_diff_eq!(d.excess_energy_gwh, 8121.12, epsilon = 1e-6);
    }

    #[test]
    fn balanced_series_has_no_deficit_or_excess() {
        let series = flat_series(48.5, 48.5, 2016);
        let d = analyze_week(1, &series).unwrap();
        assert_eq!(d.mean_deficit, 0.0);
        assert_eq!(d.max_excess, 0.0);
        assert_eq!(d.deficit_energy_gwh, 0.0);
    }

    #[test]
    fn empty_series_errors() {
        let series = SlotSeries::from_available(vec![], 48.5);
        assert!(analyze_week(1, &series).is_err());
    }

    fn ramp(from: f64, to: f64, ramp_slots: usize, pad: usize) -> Vec<f64> {
        let mut v = vec![from; pad];
        for k in 0..=ramp_slots {
            v.push(from + (to - from) * k as f64 / ramp_slots as f64);
        }
        v.resize(v.len() + pad, to);
        v
    }

    #[test]
    fn three_hour_reference_ramp() {
        // 86.1 → 52.3 over 3 h is 11.27 GW/h
        let series = ramp(86.1, 52.3, 36, 24);
        let slew = detect_max_down_slew(&series, MIN_SLEW_SLOTS, MAX_SLEW_SLOTS);
        assert_abs_diff_eq!(slew.rate_gw_per_h, 33.8 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn forty_five_minute_reference_drop() {
        // 18.68 GW in 45 min is 24.9 GW/h
        let series = ramp(70.0, 70.0 - 18.68, 9, 24);
        let slew = detect_max_down_slew(&series, MIN_SLEW_SLOTS, MAX_SLEW_SLOTS);
        assert_abs_diff_eq!(slew.rate_gw_per_h, 18.68 / 0.75, epsilon = 1e-9);
    }

    #[test]
    fn constant_and_rising_series_report_zero() {
        assert_eq!(detect_max_down_slew(&[5.0; 100], 1, 48).rate_gw_per_h, 0.0);
        let rising: Vec<f64> = (0..100).map(|i| i as f64).collect();
        assert_eq!(detect_max_down_slew(&rising, 1, 48).rate_gw_per_h, 0.0);
    }

    #[test]
    fn ties_prefer_earliest_start_then_longest_window() {
        // drops of equal rate at slots 1→2→3; integer values keep the
        // rates exactly equal
        let series = vec![10.0, 10.0, 8.0, 6.0, 6.0];
        let slew = detect_max_down_slew(&series, 1, 48);
        assert_eq!((slew.start_slot, slew.end_slot), (1, 3));
        assert_abs_diff_eq!(slew.rate_gw_per_h, 2.0 * 12.0, epsilon = 1e-12);
    }

    #[test]
    fn window_cap_limits_the_search() {
        // a slow 6-hour decline must not be reported as one event
        let series = ramp(60.0, 30.0, 72, 12);
        let slew = detect_max_down_slew(&series, MIN_SLEW_SLOTS, MAX_SLEW_SLOTS);
        let per_hour = 30.0 / 6.0;
        assert_abs_diff_eq!(slew.rate_gw_per_h, per_hour, epsilon = 1e-9);
        assert!(slew.end_slot - slew.start_slot <= MAX_SLEW_SLOTS);
    }

    #[test]
    fn mackay_estimate() {
        assert_abs_diff_eq!(
            mackay_slew_estimate(61.24, MACKAY_SLEW_COEFFICIENT),
            22.6588,
            epsilon = 1e-9
        );
        assert_eq!(mackay_slew_estimate(0.0, MACKAY_SLEW_COEFFICIENT), 0.0);
        assert_abs_diff_eq!(
            mackay_slew_estimate(100.0, MACKAY_SLEW_COEFFICIENT),
            37.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn storage_coverage_quotients() {
        let report = storage_adequacy(6580.0, &StorageLedger::default());
        assert_abs_diff_eq!(
            report.per_source[0].2.unwrap(),
            140.0 / 6580.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            report.total_coverage.unwrap(),
            1617.0 / 6580.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(report.total_capacity_gwh, 1617.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_deficit_is_not_applicable() {
        let report = storage_adequacy(0.0, &StorageLedger::default());
        assert!(report.total_coverage.is_none());
        assert!(report.per_source.iter().all(|(_, _, c)| c.is_none()));
    }

    #[test]
    fn reserve_rounds_up_to_ten() {
        assert_eq!(prudent_reserve_gw(44.9), 50.0);
        assert_eq!(prudent_reserve_gw(50.0), 50.0);
        assert_eq!(prudent_reserve_gw(50.1), 60.0);
    }
}

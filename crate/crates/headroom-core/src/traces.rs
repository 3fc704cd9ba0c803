//! The normalized year of 5-minute wind and solar traces.

use crate::numeric::{compensated_sum, mean};
use crate::{Error, Result};

/// Weeks in the modelled year.
pub const WEEKS_PER_YEAR: usize = 52;
/// 5-minute slots per week (7 × 24 × 12).
pub const SLOTS_PER_WEEK: usize = 2016;
/// Slots in the modelled year: 52 exact weeks of a 365-day year.
pub const SLOTS_PER_YEAR: usize = WEEKS_PER_YEAR * SLOTS_PER_WEEK;
/// Hours covered by one slot.
pub const SLOT_HOURS: f64 = 1.0 / 12.0;

/// Annual-average fleet outputs the unit traces are scaled to.
///
/// A fleet multiplier of 1.0 reproduces these averages; the defaults are the
/// 2017 GB fleet (6.045 GW wind, 1.16 GW solar).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baselines {
    pub wind_gw: f64,
    pub solar_gw: f64,
}

impl Default for Baselines {
    fn default() -> Self {
        Baselines {
            wind_gw: 6.045,
            solar_gw: 1.16,
        }
    }
}

impl Baselines {
    pub fn validate(&self) -> Result<()> {
        if !self.wind_gw.is_finite() || self.wind_gw <= 0.0 {
            return Err(Error::invalid("baselines", "wind baseline must be > 0"));
        }
        if !self.solar_gw.is_finite() || self.solar_gw <= 0.0 {
            return Err(Error::invalid("baselines", "solar baseline must be > 0"));
        }
        Ok(())
    }
}

/// 52 weekly blocks of 2016 per-unit wind and solar samples.
///
/// Invariants, enforced on construction: exactly [`SLOTS_PER_YEAR`] samples
/// per trace, all finite and non-negative, and each trace has annual mean
/// 1 within 1e-9 (so multiplier × baseline reproduces the baseline average).
#[derive(Debug, Clone)]
pub struct WeeklyTraceSet {
    baselines: Baselines,
    wind: Vec<f64>,
    solar: Vec<f64>,
}

impl WeeklyTraceSet {
    /// Build from per-unit traces, checking every invariant.
    pub fn from_units(wind: Vec<f64>, solar: Vec<f64>, baselines: Baselines) -> Result<Self> {
        baselines.validate()?;
        for (name, trace) in [("wind", &wind), ("solar", &solar)] {
            if trace.len() != SLOTS_PER_YEAR {
                return Err(Error::invalid(
                    "trace set",
                    format!(
                        "{name} trace has {} samples, need {}",
                        trace.len(),
                        SLOTS_PER_YEAR
                    ),
                ));
            }
            if let Some(i) = trace.iter().position(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::invalid(
                    "trace set",
                    format!("{name} sample {i} is {}", trace[i]),
                ));
            }
            let m = mean(trace);
            if (m - 1.0).abs() > 1e-9 {
                return Err(Error::invalid(
                    "trace set",
                    format!("{name} trace mean {m:.12} differs from 1 by more than 1e-9"),
                ));
            }
        }
        Ok(WeeklyTraceSet {
            baselines,
            wind,
            solar,
        })
    }

    /// Unit traces that are exactly 1.0 everywhere.
    pub fn constant(baselines: Baselines) -> Self {
        WeeklyTraceSet {
            baselines,
            wind: vec![1.0; SLOTS_PER_YEAR],
            solar: vec![1.0; SLOTS_PER_YEAR],
        }
    }

    pub fn baselines(&self) -> Baselines {
        self.baselines
    }

    pub fn wind(&self) -> &[f64] {
        &self.wind
    }

    pub fn solar(&self) -> &[f64] {
        &self.solar
    }

    /// Wind samples of one week, `week` in 1..=52.
    pub fn week_wind(&self, week: usize) -> Result<&[f64]> {
        let range = week_range(week)?;
        Ok(&self.wind[range])
    }

    /// Solar samples of one week, `week` in 1..=52.
    pub fn week_solar(&self, week: usize) -> Result<&[f64]> {
        let range = week_range(week)?;
        Ok(&self.solar[range])
    }

    /// Annual mean of the wind unit trace (1 ± 1e-9 by invariant).
    pub fn wind_mean(&self) -> f64 {
        compensated_sum(self.wind.iter().copied()) / SLOTS_PER_YEAR as f64
    }

    pub fn solar_mean(&self) -> f64 {
        compensated_sum(self.solar.iter().copied()) / SLOTS_PER_YEAR as f64
    }
}

fn week_range(week: usize) -> Result<std::ops::Range<usize>> {
    if !(1..=WEEKS_PER_YEAR).contains(&week) {
        return Err(Error::WeekOutOfRange { week });
    }
    let start = (week - 1) * SLOTS_PER_WEEK;
    Ok(start..start + SLOTS_PER_WEEK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_traces_satisfy_invariants() {
        let t = WeeklyTraceSet::constant(Baselines::default());
        assert_eq!(t.wind().len(), 104_832);
        assert!((t.wind_mean() - 1.0).abs() < 1e-12);
        assert_eq!(t.week_wind(52).unwrap().len(), 2016);
    }

    #[test]
    fn from_units_rejects_bad_mean() {
        let wind = vec![1.1; SLOTS_PER_YEAR];
        let solar = vec![1.0; SLOTS_PER_YEAR];
        assert!(WeeklyTraceSet::from_units(wind, solar, Baselines::default()).is_err());
    }

    #[test]
    fn from_units_rejects_negative_sample() {
        let mut wind = vec![1.0; SLOTS_PER_YEAR];
        wind[7] = -0.25;
        wind[8] = 2.25; // keep the mean at 1
        let solar = vec![1.0; SLOTS_PER_YEAR];
        assert!(WeeklyTraceSet::from_units(wind, solar, Baselines::default()).is_err());
    }

    #[test]
    fn week_bounds_checked() {
        let t = WeeklyTraceSet::constant(Baselines::default());
        assert!(t.week_wind(0).is_err());
        assert!(t.week_wind(53).is_err());
    }
}

//! Deterministic synthetic years for testing and benchmarking without the
//! proprietary 2017 record set.
//!
//! Wind is a seasonal weekly-mean profile modulated by an AR(1) fluctuation
//! sampled at hourly nodes and interpolated to the 5-minute slots (national
//! output is geographically smoothed; slot-level white noise would fake
//! absurd slew rates), clipped at zero so lulls occur. Solar is a seasonal
//! diurnal arc scaled by day-level weather. Both traces are renormalized to
//! unit annual mean, so all trace-set invariants hold for every seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::numeric::compensated_sum;
use crate::traces::{Baselines, WeeklyTraceSet, SLOTS_PER_YEAR, WEEKS_PER_YEAR};
use crate::{Error, Result};

const SLOTS_PER_DAY: usize = 288;
const DAYS: usize = SLOTS_PER_YEAR / SLOTS_PER_DAY; // 364
const NOON_SLOT: f64 = 144.0;
const MIDSUMMER_DAY: f64 = 172.0;

/// Generator parameters. `Default` produces a GB-like year.
#[derive(Debug, Clone)]
pub struct SynthSpec {
    /// Mean wind level per week, 52 entries, arbitrary positive scale.
    pub wind_weekly_means: Vec<f64>,
    /// Standard deviation of the within-week wind fluctuation, in units of
    /// the weekly mean. Zero gives the degenerate constant-per-week trace;
    /// negative is an error.
    pub wind_variability: f64,
    /// Correlation time of the wind fluctuation, hours.
    pub wind_correlation_hours: f64,
    /// Exponent shaping the diurnal solar arc; 0 flattens solar completely.
    pub solar_peak_sharpness: f64,
    /// Seasonal swing of solar output, 0 ≤ a < 1.
    pub solar_seasonal_amplitude: f64,
    /// Day-to-day spread of solar weather; 0 means identical clear days.
    pub solar_weather_variability: f64,
    pub baselines: Baselines,
}

impl Default for SynthSpec {
    fn default() -> Self {
        // winter-peaking wind, mild seasonal swing
        let wind_weekly_means = (0..WEEKS_PER_YEAR)
            .map(|w| 1.0 + 0.35 * (std::f64::consts::TAU * (w as f64 - 1.5) / 52.0).cos())
            .collect();
        SynthSpec {
            wind_weekly_means,
            wind_variability: 0.55,
            wind_correlation_hours: 36.0,
            solar_peak_sharpness: 1.6,
            solar_seasonal_amplitude: 0.55,
            solar_weather_variability: 0.45,
            baselines: Baselines::default(),
        }
    }
}

impl SynthSpec {
    /// Degenerate spec: both unit traces exactly 1.0 everywhere.
    pub fn constant() -> Self {
        SynthSpec {
            wind_weekly_means: vec![1.0; WEEKS_PER_YEAR],
            wind_variability: 0.0,
            wind_correlation_hours: 36.0,
            solar_peak_sharpness: 0.0,
            solar_seasonal_amplitude: 0.0,
            solar_weather_variability: 0.0,
            baselines: Baselines::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        self.baselines.validate()?;
        if self.wind_weekly_means.len() != WEEKS_PER_YEAR {
            return Err(Error::invalid(
                "synth spec",
                format!(
                    "need {WEEKS_PER_YEAR} weekly wind means, got {}",
                    self.wind_weekly_means.len()
                ),
            ));
        }
        if self
            .wind_weekly_means
            .iter()
            .any(|m| !m.is_finite() || *m < 0.0)
        {
            return Err(Error::invalid(
                "synth spec",
                "weekly wind means must be finite and >= 0",
            ));
        }
        if !self.wind_variability.is_finite() || self.wind_variability < 0.0 {
            return Err(Error::invalid(
                "synth spec",
                "wind variability must be >= 0",
            ));
        }
        if !self.wind_correlation_hours.is_finite() || self.wind_correlation_hours <= 0.0 {
            return Err(Error::invalid(
                "synth spec",
                "wind correlation time must be > 0",
            ));
        }
        if !self.solar_peak_sharpness.is_finite() || self.solar_peak_sharpness < 0.0 {
            return Err(Error::invalid(
                "synth spec",
                "solar peak sharpness must be >= 0",
            ));
        }
        if !(0.0..1.0).contains(&self.solar_seasonal_amplitude) {
            return Err(Error::invalid(
                "synth spec",
                "solar seasonal amplitude must be in [0, 1)",
            ));
        }
        if !self.solar_weather_variability.is_finite() || self.solar_weather_variability < 0.0 {
            return Err(Error::invalid(
                "synth spec",
                "solar weather variability must be >= 0",
            ));
        }
        Ok(())
    }
}

/// Generate a full synthetic year. Bit-identical for equal (spec, seed).
pub fn synthesize_year(spec: &SynthSpec, seed: u64) -> Result<WeeklyTraceSet> {
    spec.validate()?;

    let wind = wind_trace(spec, seed)?;
    let solar = solar_trace(spec, seed)?;
    WeeklyTraceSet::from_units(wind, solar, spec.baselines)
}

fn wind_trace(spec: &SynthSpec, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");

    // stationary unit-variance AR(1) at hourly nodes
    let rho = (-1.0 / spec.wind_correlation_hours).exp();
    let innovation = (1.0 - rho * rho).sqrt();
    let nodes_len = SLOTS_PER_YEAR / 12 + 2;
    let mut nodes = Vec::with_capacity(nodes_len);
    let mut x: f64 = normal.sample(&mut rng);
    nodes.push(x);
    for _ in 1..nodes_len {
        x = rho * x + innovation * normal.sample(&mut rng);
        nodes.push(x);
    }

    let mut trace = Vec::with_capacity(SLOTS_PER_YEAR);
    for t in 0..SLOTS_PER_YEAR {
        let node = t / 12;
        let frac = (t % 12) as f64 / 12.0;
        let x = nodes[node] * (1.0 - frac) + nodes[node + 1] * frac;
        let weekly = spec.wind_weekly_means[t / crate::traces::SLOTS_PER_WEEK];
        trace.push(weekly * (1.0 + spec.wind_variability * x).max(0.0));
    }
    renormalize(trace, "wind")
}

fn solar_trace(spec: &SynthSpec, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");

    // day-level weather: lognormal AR(1), clamped to keep overcast days dim
    // rather than dark
    let rho_day = 0.55f64;
    let innovation = (1.0 - rho_day * rho_day).sqrt();
    let v = spec.solar_weather_variability;
    let mut weather = Vec::with_capacity(DAYS);
    let mut y: f64 = normal.sample(&mut rng);
    for d in 0..DAYS {
        if d > 0 {
            y = rho_day * y + innovation * normal.sample(&mut rng);
        }
        weather.push((v * y - v * v / 2.0).exp().clamp(0.05, 2.0));
    }

    let mut trace = Vec::with_capacity(SLOTS_PER_YEAR);
    for t in 0..SLOTS_PER_YEAR {
        let day = t / SLOTS_PER_DAY;
        let slot = (t % SLOTS_PER_DAY) as f64;
        let phase = std::f64::consts::TAU * (day as f64 - MIDSUMMER_DAY) / 365.0;
        let season = 1.0 + spec.solar_seasonal_amplitude * phase.cos();
        // daylight half-window, slots: 5.5 h in midwinter to 16.5 h in midsummer
        let half_window = 66.0 + 33.0 * phase.cos();
        let from_noon = (slot - NOON_SLOT).abs();
        let shape = if spec.solar_peak_sharpness == 0.0 {
            1.0 // flat profile, day and night
        } else if from_noon >= half_window {
            0.0
        } else {
            let arc = (std::f64::consts::PI * from_noon / (2.0 * half_window)).cos();
            arc.powf(spec.solar_peak_sharpness)
        };
        trace.push(season * weather[day] * shape);
    }
    renormalize(trace, "solar")
}

fn renormalize(mut trace: Vec<f64>, series: &'static str) -> Result<Vec<f64>> {
    let mean = compensated_sum(trace.iter().copied()) / trace.len() as f64;
    if mean <= 0.0 {
        return Err(Error::ZeroMean { series });
    }
    for v in &mut trace {
        *v /= mean;
    }
    Ok(trace)
}

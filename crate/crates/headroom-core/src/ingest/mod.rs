//! Parsing, validation and normalization of raw 5-minute generation records.

pub mod cache;
pub mod synth;

use chrono::{DateTime, Duration, Utc};

use crate::numeric::compensated_sum;
use crate::traces::{Baselines, WeeklyTraceSet, SLOTS_PER_YEAR};
use crate::{Error, Result};

/// Longest gap that may be bridged by interpolation: 12 missing slots (1 h).
pub const MAX_GAP_SLOTS: usize = 12;

const SLOT: i64 = 300; // seconds

/// One raw 5-minute record, all values in GW.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawRecord {
    pub timestamp: DateTime<Utc>,
    pub demand_gw: f64,
    pub wind_gw: f64,
    pub solar_gw: f64,
    pub nuclear_gw: f64,
}

const HEADER: [&str; 5] = [
    "timestamp",
    "demand_gw",
    "wind_gw",
    "solar_gw",
    "nuclear_gw",
];

/// Parse CSV records with header `timestamp,demand_gw,wind_gw,solar_gw,nuclear_gw`.
///
/// Timestamps must be ISO-8601 UTC and strictly increasing; all generation
/// values must be finite and non-negative. Errors carry 1-based line numbers.
pub fn parse_records<R: std::io::Read>(source: R) -> Result<Vec<RawRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    {
        let headers = reader.headers().map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        let got: Vec<&str> = headers.iter().collect();
        if got != HEADER {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "expected header {:?}, got {:?}",
                    HEADER.join(","),
                    got.join(",")
                ),
            });
        }
    }

    let mut records = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let line = idx + 2; // header is line 1
        let row = row.map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        if row.len() != 5 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 5 fields, got {}", row.len()),
            });
        }
        let timestamp = row[0].parse::<DateTime<Utc>>().map_err(|e| Error::Parse {
            line,
            msg: format!("bad timestamp {:?}: {e}", &row[0]),
        })?;
        let mut values = [0.0_f64; 4];
        for (slot, name) in HEADER[1..].iter().enumerate() {
            let field = &row[slot + 1];
            if field.is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: format!("missing field {name}"),
                });
            }
            let v: f64 = field.parse().map_err(|e| Error::Parse {
                line,
                msg: format!("bad {name} {field:?}: {e}"),
            })?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Parse {
                    line,
                    msg: format!("{name} = {v} must be finite and non-negative"),
                });
            }
            values[slot] = v;
        }
        if let Some(prev) = records.last() {
            let prev: &RawRecord = prev;
            if timestamp <= prev.timestamp {
                return Err(Error::NonMonotonic { line });
            }
        }
        records.push(RawRecord {
            timestamp,
            demand_gw: values[0],
            wind_gw: values[1],
            solar_gw: values[2],
            nuclear_gw: values[3],
        });
    }
    Ok(records)
}

/// Fill missing 5-minute slots by linear interpolation between neighbours.
///
/// Records must already sit on a 5-minute lattice anchored at the first
/// timestamp. Gaps longer than [`MAX_GAP_SLOTS`] are an error; the output
/// has perfect 5-minute cadence and preserves every present record exactly.
pub fn fill_gaps(records: Vec<RawRecord>) -> Result<Vec<RawRecord>> {
    if records.len() < 2 {
        return Ok(records);
    }
    let origin = records[0].timestamp;
    // verify lattice alignment first so slot arithmetic below is exact
    for (i, r) in records.iter().enumerate() {
        let off = (r.timestamp - origin).num_seconds();
        if off % SLOT != 0 {
            return Err(Error::Parse {
                line: i + 2,
                msg: format!("timestamp {} is not on the 5-minute lattice", r.timestamp),
            });
        }
    }

    let mut out = Vec::with_capacity(records.len());
    out.push(records[0]);
    for pair in records.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let span = ((b.timestamp - a.timestamp).num_seconds() / SLOT) as usize;
        let missing = span - 1;
        if missing > MAX_GAP_SLOTS {
            return Err(Error::GapTooLong {
                start: a.timestamp.to_rfc3339(),
                end: b.timestamp.to_rfc3339(),
                missing,
                max: MAX_GAP_SLOTS,
            });
        }
        for k in 1..span {
            let f = k as f64 / span as f64;
            let lerp = |x: f64, y: f64| x + (y - x) * f;
            out.push(RawRecord {
                timestamp: a.timestamp + Duration::seconds(SLOT * k as i64),
                demand_gw: lerp(a.demand_gw, b.demand_gw),
                wind_gw: lerp(a.wind_gw, b.wind_gw),
                solar_gw: lerp(a.solar_gw, b.solar_gw),
                nuclear_gw: lerp(a.nuclear_gw, b.nuclear_gw),
            });
        }
        out.push(b);
    }
    Ok(out)
}

/// Scale a gap-free year of records to unit-mean traces and split into
/// 52 weekly blocks.
///
/// Keeps the first 104,832 records (52 exact weeks from the year start) and
/// discards the rest; each trace is scaled by `baseline / mean(raw)` over the
/// retained records so the unit-trace annual mean is exactly 1.
pub fn normalize(records: &[RawRecord], baselines: Baselines) -> Result<WeeklyTraceSet> {
    baselines.validate()?;
    if records.len() < SLOTS_PER_YEAR {
        return Err(Error::ShortYear {
            got: records.len(),
            need: SLOTS_PER_YEAR,
        });
    }
    let year = &records[..SLOTS_PER_YEAR];
    for (i, pair) in year.windows(2).enumerate() {
        if (pair[1].timestamp - pair[0].timestamp).num_seconds() != SLOT {
            return Err(Error::Parse {
                line: i + 3,
                msg: format!(
                    "records are not on a contiguous 5-minute cadence at {}",
                    pair[1].timestamp
                ),
            });
        }
    }

    let wind_mean = compensated_sum(year.iter().map(|r| r.wind_gw)) / SLOTS_PER_YEAR as f64;
    let solar_mean = compensated_sum(year.iter().map(|r| r.solar_gw)) / SLOTS_PER_YEAR as f64;
    if wind_mean <= 0.0 {
        return Err(Error::ZeroMean { series: "wind" });
    }
    if solar_mean <= 0.0 {
        return Err(Error::ZeroMean { series: "solar" });
    }

    // unit value = raw / annual mean, so multiplier × baseline reproduces
    // the baseline annual average
    let wind: Vec<f64> = year.iter().map(|r| r.wind_gw / wind_mean).collect();
    let solar: Vec<f64> = year.iter().map(|r| r.solar_gw / solar_mean).collect();
    WeeklyTraceSet::from_units(wind, solar, baselines)
}

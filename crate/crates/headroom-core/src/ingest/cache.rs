//! On-disk cache of normalized traces.
//!
//! Format: CSV with columns `week,slot,wind_unit,solar_unit`, week 1..=52,
//! slot 0..=2015, values at 9 significant digits. Writing and re-reading a
//! cache is byte-stable.

use std::io::{BufRead, BufReader, Read, Write};

use crate::traces::{Baselines, WeeklyTraceSet, SLOTS_PER_WEEK, SLOTS_PER_YEAR};
use crate::{Error, Result};

const CACHE_HEADER: &str = "week,slot,wind_unit,solar_unit";

/// Write the trace set as a normalized-trace cache.
pub fn write_cache<W: Write>(traces: &WeeklyTraceSet, mut out: W) -> Result<()> {
    writeln!(out, "{CACHE_HEADER}")?;
    for (i, (w, s)) in traces.wind().iter().zip(traces.solar()).enumerate() {
        let week = i / SLOTS_PER_WEEK + 1;
        let slot = i % SLOTS_PER_WEEK;
        writeln!(out, "{week},{slot},{:.8e},{:.8e}", w, s)?;
    }
    Ok(())
}

/// Read a normalized-trace cache written by [`write_cache`].
///
/// The cache schema carries no baselines, so the caller supplies the
/// baselines the traces were normalized to.
pub fn read_cache<R: Read>(source: R, baselines: Baselines) -> Result<WeeklyTraceSet> {
    let reader = BufReader::new(source);
    let mut lines = reader.lines().enumerate();

    match lines.next() {
        Some((_, Ok(h))) if h.trim() == CACHE_HEADER => {}
        Some((_, Ok(h))) => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header {CACHE_HEADER:?}, got {h:?}"),
            })
        }
        Some((_, Err(e))) => return Err(e.into()),
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty cache".into(),
            })
        }
    }

    let mut wind = Vec::with_capacity(SLOTS_PER_YEAR);
    let mut solar = Vec::with_capacity(SLOTS_PER_YEAR);
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = |name: &str| -> Result<&str> {
            fields.next().ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("missing field {name}"),
            })
        };
        let week: usize = parse_field(next("week")?, "week", line_no)?;
        let slot: usize = parse_field(next("slot")?, "slot", line_no)?;
        let expected = wind.len();
        if (week - 1) * SLOTS_PER_WEEK + slot != expected {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("rows out of order: expected slot index {expected}"),
            });
        }
        wind.push(parse_field(next("wind_unit")?, "wind_unit", line_no)?);
        solar.push(parse_field(next("solar_unit")?, "solar_unit", line_no)?);
    }
    WeeklyTraceSet::from_units(wind, solar, baselines)
}

fn parse_field<T: std::str::FromStr>(s: &str, name: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.trim().parse().map_err(|e| Error::Parse {
        line,
        msg: format!("bad {name} {s:?}: {e}"),
    })
}

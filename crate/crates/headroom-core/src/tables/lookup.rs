//! Investment lookup tables: the joint (wm, sm) at which both incremental
//! efficiencies equal a common target, per headroom level.

use super::planning::PlanningTable;
use crate::efficiency;
use crate::model::Scenario;
use crate::traces::WeeklyTraceSet;
use crate::{Error, Result};

/// Adjacent planning cells whose solar efficiencies straddle a target.
#[derive(Debug, Clone, Copy)]
pub struct StraddlePair {
    pub sm_n: f64,
    pub sm_n1: f64,
    pub wm_n: f64,
    pub wm_n1: f64,
    pub ise_n: f64,
    pub ise_n1: f64,
}

/// Resolve a straddle into the joint (wm, sm) for `target_ise`:
///
/// ```text
/// ratio = (target − ise_n1) / (ise_n − ise_n1)
/// sm    = sm_n1 − (sm_n1 − sm_n) · ratio
/// wm    = wm_n1 + (wm_n − wm_n1) · ratio
/// ```
///
/// At ratio 0 and 1 the pair's endpoints are returned exactly.
pub fn lookup_entry(pair: &StraddlePair, target_ise: f64) -> Result<(f64, f64)> {
    if pair.ise_n == pair.ise_n1 {
        return Err(Error::DegenerateStraddle { value: pair.ise_n });
    }
    let (lo, hi) = (pair.ise_n1.min(pair.ise_n), pair.ise_n1.max(pair.ise_n));
    if !(lo..=hi).contains(&target_ise) {
        return Err(Error::TargetOutOfRange {
            target: target_ise,
            lo,
            hi,
        });
    }
    let ratio = (target_ise - pair.ise_n1) / (pair.ise_n - pair.ise_n1);
    let sm = pair.sm_n1 - (pair.sm_n1 - pair.sm_n) * ratio;
    let wm = pair.wm_n1 + (pair.wm_n - pair.wm_n1) * ratio;
    Ok((wm, sm))
}

/// One lookup-table column. The efficiency fields hold re-evaluated model
/// values when the table was built with a validator.
#[derive(Debug, Clone, Copy)]
pub struct LookupEntry {
    pub hdrm: f64,
    pub wm: f64,
    pub sm: f64,
    pub iwe: Option<f64>,
    pub ise: Option<f64>,
}

/// Lookup columns for one efficiency target, in construction order:
/// the base headrooms first, then interpolated, then extrapolated.
#[derive(Debug, Clone)]
pub struct LookupTable {
    pub target: f64,
    pub entries: Vec<LookupEntry>,
}

impl LookupTable {
    pub fn entry_at(&self, hdrm: f64) -> Option<&LookupEntry> {
        self.entries.iter().find(|e| (e.hdrm - hdrm).abs() <= 1e-9)
    }

    fn sorted_by_hdrm(&self) -> Vec<&LookupEntry> {
        let mut v: Vec<&LookupEntry> = self.entries.iter().collect();
        v.sort_by(|a, b| a.hdrm.total_cmp(&b.hdrm));
        v
    }
}

/// Re-evaluates both efficiencies at every lookup entry.
pub struct Validator<'a> {
    pub traces: &'a WeeklyTraceSet,
    pub delta_wm: f64,
    pub delta_sm: f64,
}

/// Build one lookup table per planning target.
///
/// Base columns come from [`lookup_entry`] on the straddling planning cells;
/// midpoints between adjacent base headrooms are interpolated, one column is
/// extrapolated a full spacing beyond the top, and the half-spacing column
/// between those two is filled in — on the 30/40/50 base this yields the
/// 35/45/55/60 family.
pub fn build_lookup_tables(
    planning: &PlanningTable,
    validator: Option<&Validator<'_>>,
) -> Result<Vec<LookupTable>> {
    if planning.hdrm_axis.len() < 2 {
        return Err(Error::invalid(
            "planning table",
            "need at least two hdrm columns",
        ));
    }
    let mut tables = Vec::with_capacity(planning.targets.len());
    for (t, &target) in planning.targets.iter().enumerate() {
        let mut base = Vec::with_capacity(planning.hdrm_axis.len());
        for (h, &hdrm) in planning.hdrm_axis.iter().enumerate() {
            let pair = find_ise_straddle(planning, h, t, target).map_err(|e| {
                Error::invalid("lookup table", format!("hdrm={hdrm} target={target}: {e}"))
            })?;
            let (wm, sm) = lookup_entry(&pair, target)?;
            base.push(LookupEntry {
                hdrm,
                wm,
                sm,
                iwe: None,
                ise: None,
            });
        }

        let mut entries = base.clone();
        for pair in base.windows(2) {
            entries.push(midpoint(&pair[0], &pair[1]));
        }
        let n = base.len();
        let top = extrapolate(&base[n - 2], &base[n - 1]);
        entries.push(midpoint(&base[n - 1], &top));
        entries.push(top);

        if let Some(v) = validator {
            for e in &mut entries {
                let scenario = Scenario::new(e.hdrm, e.wm, e.sm)?;
                e.iwe = Some(efficiency::incremental_wind_efficiency(
                    v.traces, &scenario, v.delta_wm,
                )?);
                e.ise = Some(efficiency::incremental_solar_efficiency(
                    v.traces, &scenario, v.delta_sm,
                )?);
            }
        }
        tables.push(LookupTable { target, entries });
    }
    Ok(tables)
}

fn midpoint(a: &LookupEntry, b: &LookupEntry) -> LookupEntry {
    LookupEntry {
        hdrm: (a.hdrm + b.hdrm) / 2.0,
        wm: (a.wm + b.wm) / 2.0,
        sm: (a.sm + b.sm) / 2.0,
        iwe: None,
        ise: None,
    }
}

fn extrapolate(a: &LookupEntry, b: &LookupEntry) -> LookupEntry {
    LookupEntry {
        hdrm: 2.0 * b.hdrm - a.hdrm,
        wm: 2.0 * b.wm - a.wm,
        sm: 2.0 * b.sm - a.sm,
        iwe: None,
        ise: None,
    }
}

/// First adjacent pair of available planning cells (scanning sm upward)
/// whose solar efficiencies straddle the target.
fn find_ise_straddle(
    planning: &PlanningTable,
    h: usize,
    t: usize,
    target: f64,
) -> Result<StraddlePair> {
    let sm_axis = &planning.sm_axis;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in 0..sm_axis.len().saturating_sub(1) {
        let (a, b) = (planning.cell(h, t, s), planning.cell(h, t, s + 1));
        let (Some(wm_n), Some(ise_n)) = (a.wm, a.ise) else {
            continue;
        };
        let (Some(wm_n1), Some(ise_n1)) = (b.wm, b.ise) else {
            continue;
        };
        lo = lo.min(ise_n1.min(ise_n));
        hi = hi.max(ise_n1.max(ise_n));
        if ise_n >= target && target >= ise_n1 {
            return Ok(StraddlePair {
                sm_n: sm_axis[s],
                sm_n1: sm_axis[s + 1],
                wm_n,
                wm_n1,
                ise_n,
                ise_n1,
            });
        }
    }
    Err(Error::TargetOutOfRange { target, lo, hi })
}

/// Piecewise-linear inverse of the hdrm → wm relation of a lookup table.
pub fn hdrm_for_wind(table: &LookupTable, wm_query: f64) -> Result<f64> {
    let nodes = table.sorted_by_hdrm();
    if nodes.len() < 2 {
        return Err(Error::invalid("lookup table", "need at least two columns"));
    }
    for pair in nodes.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.wm <= wm_query && wm_query <= b.wm {
            return Ok(a.hdrm + (wm_query - a.wm) / (b.wm - a.wm) * (b.hdrm - a.hdrm));
        }
    }
    Err(Error::TargetOutOfRange {
        target: wm_query,
        lo: nodes.first().unwrap().wm,
        hi: nodes.last().unwrap().wm,
    })
}

/// Fleet multipliers at an intermediate headroom, linear between the
/// bracketing table columns.
pub fn wm_sm_at_hdrm(table: &LookupTable, hdrm: f64) -> Result<(f64, f64)> {
    let nodes = table.sorted_by_hdrm();
    if nodes.len() < 2 {
        return Err(Error::invalid("lookup table", "need at least two columns"));
    }
    for pair in nodes.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.hdrm <= hdrm && hdrm <= b.hdrm {
            let t = (hdrm - a.hdrm) / (b.hdrm - a.hdrm);
            return Ok((a.wm + t * (b.wm - a.wm), a.sm + t * (b.sm - a.sm)));
        }
    }
    Err(Error::OutOfGrid {
        axis: "hdrm",
        value: hdrm,
        lo: nodes.first().unwrap().hdrm,
        hi: nodes.last().unwrap().hdrm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reference_pair() -> StraddlePair {
        StraddlePair {
            sm_n: 4.0,
            sm_n1: 6.0,
            wm_n: 5.572,
            wm_n1: 5.303,
            ise_n: 0.632,
            ise_n1: 0.490,
        }
    }

    #[test]
    fn worked_example_reproduces() {
        let (wm, sm) = lookup_entry(&reference_pair(), 0.5).unwrap();
        assert_abs_diff_eq!(wm, 5.322, epsilon = 1e-3);
        assert_abs_diff_eq!(sm, 5.859, epsilon = 1e-3);
    }

    #[test]
    fn endpoint_identities_hold_exactly() {
        let pair = reference_pair();
        assert_eq!(
            lookup_entry(&pair, pair.ise_n1).unwrap(),
            (pair.wm_n1, pair.sm_n1)
        );
        assert_eq!(
            lookup_entry(&pair, pair.ise_n).unwrap(),
            (pair.wm_n, pair.sm_n)
        );
    }

    #[test]
    fn out_of_straddle_and_degenerate_errors() {
        let pair = reference_pair();
        assert!(matches!(
            lookup_entry(&pair, 0.7).unwrap_err(),
            Error::TargetOutOfRange { .. }
        ));
        let flat = StraddlePair {
            ise_n1: 0.632,
            ..pair
        };
        assert!(matches!(
            lookup_entry(&flat, 0.632).unwrap_err(),
            Error::DegenerateStraddle { .. }
        ));
    }

    fn synthetic_table() -> LookupTable {
        // wm linear in hdrm: wm = hdrm / 10
        LookupTable {
            target: 0.5,
            entries: (3..=6)
                .map(|h| LookupEntry {
                    hdrm: 10.0 * h as f64,
                    wm: h as f64,
                    sm: h as f64 / 2.0,
                    iwe: None,
                    ise: None,
                })
                .collect(),
        }
    }

    #[test]
    fn hdrm_for_wind_inverts_linear_tables_exactly() {
        let table = synthetic_table();
        assert_eq!(hdrm_for_wind(&table, 4.5).unwrap(), 45.0);
        assert_eq!(hdrm_for_wind(&table, 4.0).unwrap(), 40.0);
        assert!(matches!(
            hdrm_for_wind(&table, 9.0).unwrap_err(),
            Error::TargetOutOfRange { .. }
        ));
    }

    #[test]
    fn wm_sm_at_hdrm_interpolates() {
        let table = synthetic_table();
        let (wm, sm) = wm_sm_at_hdrm(&table, 35.0).unwrap();
        assert_abs_diff_eq!(wm, 3.5, epsilon = 1e-12);
        assert_abs_diff_eq!(sm, 1.75, epsilon = 1e-12);
        assert!(wm_sm_at_hdrm(&table, 25.0).is_err());
    }
}

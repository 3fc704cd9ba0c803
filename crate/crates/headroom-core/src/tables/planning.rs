//! Investment planning tables: for each (hdrm, efficiency target, sm), the
//! wm at which the wind efficiency hits the target, and the solar efficiency
//! evaluated there.

use super::Lattice;
use crate::efficiency;
use crate::model::Scenario;
use crate::traces::WeeklyTraceSet;
use crate::{Error, Result};

/// Tolerance for matching axis values between independently-built tables.
const AXIS_EPS: f64 = 1e-9;

/// One planning cell; either side may be unavailable (target unreachable on
/// the grid, or no fixture value).
#[derive(Debug, Clone, Copy, Default)]
pub struct PlanningCell {
    pub wm: Option<f64>,
    pub ise: Option<f64>,
}

/// Planning cells over hdrm × target × sm.
#[derive(Debug, Clone)]
pub struct PlanningTable {
    pub hdrm_axis: Vec<f64>,
    pub targets: Vec<f64>,
    pub sm_axis: Vec<f64>,
    cells: Vec<PlanningCell>,
}

impl PlanningTable {
    pub fn empty(hdrm_axis: Vec<f64>, targets: Vec<f64>, sm_axis: Vec<f64>) -> Self {
        let n = hdrm_axis.len() * targets.len() * sm_axis.len();
        PlanningTable {
            hdrm_axis,
            targets,
            sm_axis,
            cells: vec![PlanningCell::default(); n],
        }
    }

    fn index(&self, h: usize, t: usize, s: usize) -> usize {
        (h * self.targets.len() + t) * self.sm_axis.len() + s
    }

    pub fn cell(&self, h: usize, t: usize, s: usize) -> PlanningCell {
        self.cells[self.index(h, t, s)]
    }

    pub fn cell_mut(&mut self, h: usize, t: usize, s: usize) -> &mut PlanningCell {
        let i = self.index(h, t, s);
        &mut self.cells[i]
    }

    /// Cell addressed by axis values rather than indices.
    pub fn cell_at(&self, hdrm: f64, target: f64, sm: f64) -> Option<PlanningCell> {
        let h = index_of(&self.hdrm_axis, hdrm)?;
        let t = index_of(&self.targets, target)?;
        let s = index_of(&self.sm_axis, sm)?;
        Some(self.cell(h, t, s))
    }
}

fn index_of(axis: &[f64], value: f64) -> Option<usize> {
    axis.iter().position(|a| (a - value).abs() <= AXIS_EPS)
}

/// Invert one wm column of an efficiency lattice: the wm at which the
/// (non-increasing) column crosses `target`, by linear interpolation between
/// the first straddling pair scanning from low wm.
pub fn wm_for_target_iwe(wm_axis: &[f64], column: &[f64], target: f64) -> Result<f64> {
    if wm_axis.len() != column.len() || wm_axis.is_empty() {
        return Err(Error::invalid(
            "iwe column",
            "column and wm axis lengths differ",
        ));
    }
    for k in 0..column.len() - 1 {
        let (a, b) = (column[k], column[k + 1]);
        if a >= target && target >= b {
            return Ok(wm_axis[k] + (a - target) / (a - b) * (wm_axis[k + 1] - wm_axis[k]));
        }
    }
    // no straddle: report the achievable range of the column
    let lo = column.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = column.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Err(Error::TargetOutOfRange { target, lo, hi })
}

/// Where the solar efficiencies of a planning table come from.
pub enum IseSource<'a> {
    /// Evaluate the model at each (hdrm, wm*, sm) with this solar step.
    Model {
        traces: &'a WeeklyTraceSet,
        delta_sm: f64,
    },
    /// Take stored values from another planning table (fixture mode);
    /// cells without a stored value stay unavailable.
    Table(&'a PlanningTable),
}

/// Build the planning table for `targets` from a wind-efficiency lattice.
///
/// Cells whose target is unreachable on the grid are marked unavailable
/// rather than failing the build.
pub fn build_planning_table(
    iwe: &Lattice,
    targets: &[f64],
    ise_source: IseSource<'_>,
) -> Result<PlanningTable> {
    if targets.is_empty() {
        return Err(Error::invalid("targets", "no efficiency targets given"));
    }
    let axes = iwe.axes();
    let mut table = PlanningTable::empty(axes.hdrm.clone(), targets.to_vec(), axes.sm.clone());

    for (h, &hdrm) in axes.hdrm.iter().enumerate() {
        for (t, &target) in targets.iter().enumerate() {
            for (s, &sm) in axes.sm.iter().enumerate() {
                let column = iwe.wm_column(h, s);
                let wm_star = match wm_for_target_iwe(&axes.wm, &column, target) {
                    Ok(w) => w,
                    Err(Error::TargetOutOfRange { .. }) => continue, // cell unavailable
                    Err(e) => return Err(e),
                };
                let ise = match &ise_source {
                    IseSource::Model { traces, delta_sm } => {
                        Some(efficiency::incremental_solar_efficiency(
                            traces,
                            &Scenario::new(hdrm, wm_star, sm)?,
                            *delta_sm,
                        )?)
                    }
                    IseSource::Table(fixture) => {
                        fixture.cell_at(hdrm, target, sm).and_then(|c| c.ise)
                    }
                };
                *table.cell_mut(h, t, s) = PlanningCell {
                    wm: Some(wm_star),
                    ise,
                };
            }
        }
    }
    Ok(table)
}

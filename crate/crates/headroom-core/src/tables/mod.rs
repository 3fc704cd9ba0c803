//! Efficiency lattices over (hdrm, wm, sm) and interpolation within them.

pub mod io;
mod lookup;
mod planning;

pub use lookup::{
    build_lookup_tables, hdrm_for_wind, lookup_entry, wm_sm_at_hdrm, LookupEntry, LookupTable,
    StraddlePair, Validator,
};
pub use planning::{
    build_planning_table, wm_for_target_iwe, IseSource, PlanningCell, PlanningTable,
};

use rayon::prelude::*;

use crate::model::{evaluate, Scenario};
use crate::traces::WeeklyTraceSet;
use crate::{Error, Result};

/// Lattice axes, each strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxes {
    pub hdrm: Vec<f64>,
    pub wm: Vec<f64>,
    pub sm: Vec<f64>,
}

impl Default for GridAxes {
    /// The reference operating range: hdrm 30/40/50, wm 1..=10, sm 0..=8
    /// step 2 — 150 lattice points.
    fn default() -> Self {
        GridAxes {
            hdrm: vec![30.0, 40.0, 50.0],
            wm: (1..=10).map(f64::from).collect(),
            sm: vec![0.0, 2.0, 4.0, 6.0, 8.0],
        }
    }
}

impl GridAxes {
    pub fn validate(&self) -> Result<()> {
        for (name, axis) in [("hdrm", &self.hdrm), ("wm", &self.wm), ("sm", &self.sm)] {
            if axis.is_empty() {
                return Err(Error::invalid("grid axes", format!("{name} axis is empty")));
            }
            if axis.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(
                    "grid axes",
                    format!("{name} axis has a non-finite value"),
                ));
            }
            if axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(
                    "grid axes",
                    format!("{name} axis is not strictly increasing"),
                ));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.hdrm.len() * self.wm.len() * self.sm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One scalar field sampled on the axes, stored [hdrm][wm][sm].
#[derive(Debug, Clone)]
pub struct Lattice {
    axes: GridAxes,
    values: Vec<f64>,
}

impl Lattice {
    pub fn new(axes: GridAxes, values: Vec<f64>) -> Result<Self> {
        axes.validate()?;
        if values.len() != axes.len() {
            return Err(Error::invalid(
                "lattice",
                format!("{} values for {} lattice points", values.len(), axes.len()),
            ));
        }
        Ok(Lattice { axes, values })
    }

    pub fn axes(&self) -> &GridAxes {
        &self.axes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, h: usize, w: usize, s: usize) -> f64 {
        self.values[(h * self.axes.wm.len() + w) * self.axes.sm.len() + s]
    }

    /// The values along the wm axis at fixed (hdrm, sm) indices.
    pub fn wm_column(&self, h: usize, s: usize) -> Vec<f64> {
        (0..self.axes.wm.len()).map(|w| self.at(h, w, s)).collect()
    }
}

/// The two lattices the planning pipeline consumes, sharing axes.
#[derive(Debug, Clone)]
pub struct EfficiencyGrid {
    pub gw_ws: Lattice,
    pub iwe: Lattice,
}

/// Fill both lattices by model evaluation at every point.
///
/// One evaluation per point for accommodated generation plus one wm-bumped
/// evaluation for the wind efficiency; points are independent and run in
/// parallel, output order is deterministic.
pub fn build_grid(
    traces: &WeeklyTraceSet,
    axes: &GridAxes,
    delta_wm: f64,
) -> Result<EfficiencyGrid> {
    axes.validate()?;
    if !delta_wm.is_finite() || delta_wm <= 0.0 {
        return Err(Error::invalid(
            "delta_wm",
            format!("{delta_wm} must be > 0"),
        ));
    }
    let (nw, ns) = (axes.wm.len(), axes.sm.len());
    let points: Vec<(f64, f64, f64)> = (0..axes.len())
        .map(|idx| {
            let h = idx / (nw * ns);
            let w = (idx / ns) % nw;
            let s = idx % ns;
            (axes.hdrm[h], axes.wm[w], axes.sm[s])
        })
        .collect();

    let wind_base = traces.baselines().wind_gw;
    let results: Vec<Result<(f64, f64)>> = points
        .par_iter()
        .map(|&(hdrm, wm, sm)| {
            // two evaluations per point: the base and the wind-bumped run
            let scenario = Scenario::new(hdrm, wm, sm)?;
            let base = evaluate(traces, &scenario)?.accommodated;
            let bumped = evaluate(
                traces,
                &Scenario {
                    wm: wm + delta_wm,
                    ..scenario
                },
            )?
            .accommodated;
            Ok((base, (bumped - base) / (delta_wm * wind_base)))
        })
        .collect();

    let mut gw_ws = Vec::with_capacity(axes.len());
    let mut iwe = Vec::with_capacity(axes.len());
    for r in results {
        let (g, i) = r?;
        gw_ws.push(g);
        iwe.push(i);
    }
    Ok(EfficiencyGrid {
        gw_ws: Lattice::new(axes.clone(), gw_ws)?,
        iwe: Lattice::new(axes.clone(), iwe)?,
    })
}

/// Trilinear interpolation of accommodated generation within a lattice.
///
/// wm and sm must lie inside their axis ranges; hdrm may additionally be
/// extrapolated upward by one axis spacing beyond the top (the reference
/// grid tops out at 50 but the tables extend to 60).
pub fn interp_gw_ws(lattice: &Lattice, scenario: &Scenario) -> Result<f64> {
    scenario.validate()?;
    let axes = lattice.axes();
    let (h0, h1, th) = bracket(&axes.hdrm, scenario.hdrm, "hdrm", true)?;
    let (w0, w1, tw) = bracket(&axes.wm, scenario.wm, "wm", false)?;
    let (s0, s1, ts) = bracket(&axes.sm, scenario.sm, "sm", false)?;

    let mut acc = 0.0;
    for (hi, wh) in [(h0, 1.0 - th), (h1, th)] {
        for (wi, ww) in [(w0, 1.0 - tw), (w1, tw)] {
            for (si, ws) in [(s0, 1.0 - ts), (s1, ts)] {
                let weight = wh * ww * ws;
                if weight != 0.0 {
                    acc += weight * lattice.at(hi, wi, si);
                }
            }
        }
    }
    Ok(acc)
}

/// Find the axis interval containing `x`, returning its endpoint indices and
/// the interpolation fraction. With `extrapolate_high`, `x` may exceed the
/// axis top by up to one final spacing (fraction > 1).
fn bracket(
    axis: &[f64],
    x: f64,
    name: &'static str,
    extrapolate_high: bool,
) -> Result<(usize, usize, f64)> {
    let lo = axis[0];
    let hi = *axis.last().unwrap();
    let reach = if extrapolate_high && axis.len() >= 2 {
        hi + (hi - axis[axis.len() - 2])
    } else {
        hi
    };
    if !(lo..=reach).contains(&x) {
        return Err(Error::OutOfGrid {
            axis: name,
            value: x,
            lo,
            hi: reach,
        });
    }
    if axis.len() == 1 {
        return Ok((0, 0, 0.0));
    }
    let i = match axis.iter().position(|a| x <= *a) {
        Some(0) => 0,
        Some(i) => i - 1,
        None => axis.len() - 2, // beyond the top: extrapolate from the last interval
    };
    let t = (x - axis[i]) / (axis[i + 1] - axis[i]);
    Ok((i, i + 1, t))
}

//! `sweep`, `plan`, `lookup`, `figure2`, `figure3`: the lattice and
//! interpolation-table pipeline, live from a trace set or replayed from a
//! stored array document via `--from-array`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;

use headroom_core::efficiency::incremental_wind_efficiency;
use headroom_core::tables::{
    build_grid, build_lookup_tables, build_planning_table, io, io::ArrayDocument, EfficiencyGrid,
    IseSource, LookupTable, PlanningTable, Validator,
};
use headroom_core::{Scenario, WeeklyTraceSet};

use super::{out_dir, DataOpts};
use crate::config::RunConfig;
use crate::output::{mult, opt_mult, OutputWriter};
use crate::CliError;

fn with_cleanup(
    writer: &mut OutputWriter,
    inner: impl FnOnce(&mut OutputWriter) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let result = inner(writer);
    if result.is_err() {
        writer.discard_all();
    }
    result
}

pub(super) fn read_array(path: &Path) -> Result<ArrayDocument, CliError> {
    ArrayDocument::read_path(path)
        .map_err(CliError::from)
        .map_err(|e| match e {
            CliError::Numeric(m) | CliError::Data(m) => {
                CliError::Data(format!("{}: {m}", path.display()))
            }
            other => other,
        })
}

fn live_grid(traces: &WeeklyTraceSet, config: &RunConfig) -> Result<EfficiencyGrid, CliError> {
    Ok(build_grid(
        traces,
        &config.axes(),
        config.efficiency.delta_wm,
    )?)
}

/// Planning table in fixture mode: wm rows interpolated from the stored
/// wind-efficiency lattice, solar efficiencies taken from the stored
/// planning rows.
fn planning_from_doc(doc: &ArrayDocument, targets: &[f64]) -> Result<PlanningTable, CliError> {
    let iwe = doc.require_iwe()?;
    let stored = doc.require_planning()?;
    Ok(build_planning_table(
        iwe,
        targets,
        IseSource::Table(stored),
    )?)
}

fn section_string(
    write: impl FnOnce(&mut Vec<u8>) -> headroom_core::Result<()>,
) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write(&mut buf).map_err(CliError::from)?;
    Ok(String::from_utf8(buf).expect("table sections are utf-8"))
}

// --------------------------------------------------------------------- sweep

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataOpts,

    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

pub fn run_sweep(args: SweepArgs, config: &RunConfig) -> Result<(), CliError> {
    let traces = args.data.resolve(config)?;
    let mut writer = OutputWriter::new(&out_dir(args.out_dir.as_deref(), config))?;
    with_cleanup(&mut writer, |writer| {
        let grid = live_grid(&traces, config)?;
        writer.write(
            "gw_ws.csv",
            &section_string(|b| io::write_array_section(b, "gw_ws", &grid.gw_ws))?,
        )?;
        writer.write(
            "iwe.csv",
            &section_string(|b| io::write_array_section(b, "iwe", &grid.iwe))?,
        )?;

        let axes = grid.gw_ws.axes();
        let mut md = String::from("# Efficiency lattice sweep\n\n");
        let _ = writeln!(
            md,
            "- axes: hdrm {:?} × wm {} points × sm {:?}",
            axes.hdrm,
            axes.wm.len(),
            axes.sm
        );
        let _ = writeln!(md, "- {} lattice points per array", axes.len());
        let _ = writeln!(
            md,
            "- files: gw_ws.csv (accommodated GW), iwe.csv (incremental wind efficiency)"
        );
        writer.write("sweep_summary.md", &md)?;
        Ok(())
    })
}

// ---------------------------------------------------------------------- plan

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Build from a stored array document instead of live model runs
    #[arg(long, value_name = "FILE")]
    pub from_array: Option<PathBuf>,

    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

pub fn run_plan(args: PlanArgs, config: &RunConfig) -> Result<(), CliError> {
    let mut writer = OutputWriter::new(&out_dir(args.out_dir.as_deref(), config))?;
    with_cleanup(&mut writer, |writer| {
        let planning = match &args.from_array {
            Some(path) => planning_from_doc(&read_array(path)?, &config.targets)?,
            None => {
                let traces = args.data.resolve(config)?;
                let grid = live_grid(&traces, config)?;
                build_planning_table(
                    &grid.iwe,
                    &config.targets,
                    IseSource::Model {
                        traces: &traces,
                        delta_sm: config.efficiency.delta_sm,
                    },
                )?
            }
        };
        writer.write(
            "planning.csv",
            &section_string(|b| io::write_planning(b, &planning))?,
        )?;

        let mut available = 0usize;
        let total = planning.hdrm_axis.len() * planning.targets.len() * planning.sm_axis.len();
        for h in 0..planning.hdrm_axis.len() {
            for t in 0..planning.targets.len() {
                for s in 0..planning.sm_axis.len() {
                    if planning.cell(h, t, s).wm.is_some() {
                        available += 1;
                    }
                }
            }
        }
        let mut md = String::from("# Investment planning table\n\n");
        let _ = writeln!(md, "- targets: {:?}", planning.targets);
        let _ = writeln!(md, "- {available} of {total} cells reachable on the grid");
        let _ = writeln!(md, "- file: planning.csv");
        writer.write("plan_summary.md", &md)?;
        Ok(())
    })
}

// -------------------------------------------------------------------- lookup

#[derive(Debug, Args)]
pub struct LookupArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Build from a stored array document instead of live model runs
    #[arg(long, value_name = "FILE")]
    pub from_array: Option<PathBuf>,

    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

/// The lookup tables, from either source. Live builds re-evaluate the
/// efficiencies at every entry (the validation rows); fixture builds cannot.
pub fn lookup_tables(
    data: &DataOpts,
    from_array: Option<&Path>,
    config: &RunConfig,
) -> Result<Vec<LookupTable>, CliError> {
    match from_array {
        Some(path) => {
            let doc = read_array(path)?;
            let planning = planning_from_doc(&doc, &config.targets)?;
            Ok(build_lookup_tables(&planning, None)?)
        }
        None => {
            let traces = data.resolve(config)?;
            let grid = live_grid(&traces, config)?;
            let planning = build_planning_table(
                &grid.iwe,
                &config.targets,
                IseSource::Model {
                    traces: &traces,
                    delta_sm: config.efficiency.delta_sm,
                },
            )?;
            let validator = Validator {
                traces: &traces,
                delta_wm: config.efficiency.delta_wm,
                delta_sm: config.efficiency.delta_sm,
            };
            Ok(build_lookup_tables(&planning, Some(&validator))?)
        }
    }
}

pub fn run_lookup(args: LookupArgs, config: &RunConfig) -> Result<(), CliError> {
    let mut writer = OutputWriter::new(&out_dir(args.out_dir.as_deref(), config))?;
    with_cleanup(&mut writer, |writer| {
        let tables = lookup_tables(&args.data, args.from_array.as_deref(), config)?;
        let mut out = String::new();
        for table in &tables {
            out.push_str(&section_string(|b| io::write_lookup(b, table))?);
        }
        writer.write("lookup_tables.csv", &out)?;

        let mut md = String::from("# Investment lookup tables\n\n");
        for table in &tables {
            let _ = writeln!(md, "## target {}\n", table.target);
            let _ = writeln!(md, "| hdrm | wm | sm | iwe | ise |");
            let _ = writeln!(md, "|-----:|---:|---:|----:|----:|");
            for e in &table.entries {
                let _ = writeln!(
                    md,
                    "| {} | {} | {} | {} | {} |",
                    e.hdrm,
                    mult(e.wm),
                    mult(e.sm),
                    opt_mult(e.iwe),
                    opt_mult(e.ise)
                );
            }
            md.push('\n');
        }
        writer.write("lookup_summary.md", &md)?;
        Ok(())
    })
}

// ------------------------------------------------------------------- figures

#[derive(Debug, Args)]
pub struct Figure2Args {
    #[command(flatten)]
    pub data: DataOpts,

    /// Read curve data off a stored wind-efficiency lattice
    #[arg(long, value_name = "FILE")]
    pub from_array: Option<PathBuf>,

    /// Headroom levels to sweep (defaults to the grid axis)
    #[arg(long, value_delimiter = ',', value_name = "GW,..")]
    pub hdrm: Option<Vec<f64>>,

    /// Solar multipliers to sweep (defaults to the grid axis)
    #[arg(long, value_delimiter = ',', value_name = "SM,..")]
    pub sm: Option<Vec<f64>>,

    /// Wind-multiplier step for live sweeps
    #[arg(long, default_value_t = 0.25)]
    pub wm_step: f64,

    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

pub fn run_figure2(args: Figure2Args, config: &RunConfig) -> Result<(), CliError> {
    let axes = config.axes();
    let hdrm_set = args.hdrm.clone().unwrap_or_else(|| axes.hdrm.clone());
    let sm_set = args.sm.clone().unwrap_or_else(|| axes.sm.clone());
    let mut writer = OutputWriter::new(&out_dir(args.out_dir.as_deref(), config))?;
    with_cleanup(&mut writer, |writer| {
        let mut csv = String::from("hdrm,sm,wm,iwe\n");
        match &args.from_array {
            Some(path) => {
                let doc = read_array(path)?;
                let iwe = doc.require_iwe()?;
                let stored = iwe.axes();
                for hdrm in &hdrm_set {
                    let h = stored
                        .hdrm
                        .iter()
                        .position(|v| (v - hdrm).abs() <= 1e-9)
                        .ok_or_else(|| {
                            CliError::Numeric(format!("hdrm {hdrm} is not on the stored lattice"))
                        })?;
                    for sm in &sm_set {
                        let s = stored
                            .sm
                            .iter()
                            .position(|v| (v - sm).abs() <= 1e-9)
                            .ok_or_else(|| {
                                CliError::Numeric(format!("sm {sm} is not on the stored lattice"))
                            })?;
                        for (w, wm) in stored.wm.iter().enumerate() {
                            let _ = writeln!(csv, "{hdrm},{sm},{wm},{}", mult(iwe.at(h, w, s)));
                        }
                    }
                }
            }
            None => {
                if !args.wm_step.is_finite() || args.wm_step <= 0.0 {
                    return Err(CliError::Usage("--wm-step must be > 0".into()));
                }
                let traces = args.data.resolve(config)?;
                let (lo, hi) = (axes.wm[0], *axes.wm.last().unwrap());
                for hdrm in &hdrm_set {
                    for sm in &sm_set {
                        let mut wm = lo;
                        while wm <= hi + 1e-9 {
                            let iwe = incremental_wind_efficiency(
                                &traces,
                                &Scenario::new(*hdrm, wm, *sm)?,
                                config.efficiency.delta_wm,
                            )?;
                            let _ = writeln!(csv, "{hdrm},{sm},{},{}", mult(wm), mult(iwe));
                            wm += args.wm_step;
                        }
                    }
                }
            }
        }
        writer.write("figure2.csv", &csv)?;
        Ok(())
    })
}

#[derive(Debug, Args)]
pub struct Figure3Args {
    #[command(flatten)]
    pub data: DataOpts,

    /// Build from a stored array document instead of live model runs
    #[arg(long, value_name = "FILE")]
    pub from_array: Option<PathBuf>,

    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

pub fn run_figure3(args: Figure3Args, config: &RunConfig) -> Result<(), CliError> {
    let mut writer = OutputWriter::new(&out_dir(args.out_dir.as_deref(), config))?;
    with_cleanup(&mut writer, |writer| {
        let tables = lookup_tables(&args.data, args.from_array.as_deref(), config)?;
        let mut csv = String::from("target,hdrm,wm,sm\n");
        for table in &tables {
            let mut entries: Vec<_> = table.entries.iter().collect();
            entries.sort_by(|a, b| a.hdrm.total_cmp(&b.hdrm));
            for e in entries {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    table.target,
                    e.hdrm,
                    mult(e.wm),
                    mult(e.sm)
                );
            }
        }
        writer.write("figure3.csv", &csv)?;
        Ok(())
    })
}

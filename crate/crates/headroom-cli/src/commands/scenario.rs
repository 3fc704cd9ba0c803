//! `scenario`: emissions and decarbonisation reports for a configured
//! scenario list.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;

use headroom_core::scenario::{
    analyze_scenario, decarb_ladder, AccommodatedSource, ScenarioReport,
};
use headroom_core::tables::{io::ArrayDocument, wm_sm_at_hdrm, LookupTable};
use headroom_core::{Scenario, WeeklyTraceSet};

use super::{out_dir, DataOpts};
use crate::config::{RunConfig, ScenarioSpec};
use crate::output::{gw, mult, opt_mult, OutputWriter};
use crate::CliError;

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Take accommodated generation and lookup tables from a stored array
    /// document instead of live model runs
    #[arg(long, value_name = "FILE")]
    pub from_array: Option<PathBuf>,

    /// Headroom for scenarios that do not set their own
    #[arg(long)]
    pub hdrm: Option<f64>,

    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

enum Sources<'a> {
    Stored(Box<ArrayDocument>),
    Live {
        traces: &'a WeeklyTraceSet,
        lookups: Vec<LookupTable>,
    },
}

impl Sources<'_> {
    fn lookup_for(&self, target: f64) -> Result<&LookupTable, CliError> {
        let found = match self {
            Sources::Stored(doc) => doc
                .lookups
                .iter()
                .find(|t| (t.target - target).abs() <= 1e-9),
            Sources::Live { lookups, .. } => {
                lookups.iter().find(|t| (t.target - target).abs() <= 1e-9)
            }
        };
        found.ok_or_else(|| CliError::Numeric(format!("no lookup table for target {target}")))
    }
}

pub fn run(args: ScenarioArgs, config: &RunConfig) -> Result<(), CliError> {
    let mut writer = OutputWriter::new(&out_dir(args.out_dir.as_deref(), config))?;
    let result = inner(&args, config, &mut writer);
    if result.is_err() {
        writer.discard_all();
    }
    result
}

fn inner(
    args: &ScenarioArgs,
    config: &RunConfig,
    writer: &mut OutputWriter,
) -> Result<(), CliError> {
    let specs = config.scenarios_or_default();
    let default_hdrm = args.hdrm.unwrap_or(config.dynamics.hdrm);
    let needs_lookup = specs.iter().any(|s| s.target.is_some());

    let traces_storage;
    let sources = match &args.from_array {
        Some(path) => Sources::Stored(Box::new(super::tables::read_array(path)?)),
        None => {
            traces_storage = args.data.resolve(config)?;
            let lookups = if needs_lookup {
                super::tables::lookup_tables(&args.data, None, config)?
            } else {
                Vec::new()
            };
            Sources::Live {
                traces: &traces_storage,
                lookups,
            }
        }
    };

    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        reports.push(build_report(spec, default_hdrm, &sources, config)?);
    }
    reports.sort_by(|a, b| a.available.total_cmp(&b.available));
    let ladder = decarb_ladder(&reports)?;

    let mut table4 = String::from(
        "label,target,hdrm_gw,wm,wind_gw,sm,solar_gw,available_gw,accommodated_gw,\
         curtailed_gw,dispatchable_gw,emissions_mtes_pa,iwe,ise\n",
    );
    for r in &reports {
        let _ = writeln!(
            table4,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.label,
            r.target.map(mult).unwrap_or_default(),
            gw(r.hdrm),
            mult(r.wm),
            gw(r.gw_wind),
            mult(r.sm),
            gw(r.gw_solar),
            gw(r.available),
            gw(r.accommodated),
            gw(r.curtailed),
            gw(r.dispatchable),
            gw(r.emissions_mtes_pa),
            opt_mult(r.iwe),
            opt_mult(r.ise)
        );
    }
    writer.write("scenarios.csv", &table4)?;

    let mut table5 = String::from(
        "from,to,emission_reduction_mtes_pa,added_generation_gw,efficiency_mtes_per_gw\n",
    );
    for step in &ladder {
        let _ = writeln!(
            table5,
            "{},{},{},{},{}",
            step.from_label,
            step.to_label,
            gw(step.emission_reduction_mtes_pa),
            gw(step.added_generation_gw),
            gw(step.efficiency)
        );
    }
    writer.write("decarb_ladder.csv", &table5)?;

    let mut md = String::from("# Scenario assessment\n\n");
    let _ = writeln!(
        md,
        "| label | wm | sm | accommodated GW | dispatchable GW | emissions Mt/a |"
    );
    let _ = writeln!(md, "|---|---:|---:|---:|---:|---:|");
    for r in &reports {
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} | {} | {} |",
            r.label,
            mult(r.wm),
            mult(r.sm),
            gw(r.accommodated),
            gw(r.dispatchable),
            gw(r.emissions_mtes_pa)
        );
    }
    md.push('\n');
    let _ = writeln!(md, "Decarbonisation efficiency falls step by step:\n");
    for step in &ladder {
        let _ = writeln!(
            md,
            "- {} → {}: {} Mt/a per added GW",
            step.from_label,
            step.to_label,
            gw(step.efficiency)
        );
    }
    writer.write("scenario_summary.md", &md)?;

    for r in &reports {
        println!(
            "{}: accommodated {} GW, dispatchable {} GW, emissions {} Mt/a",
            r.label,
            gw(r.accommodated),
            gw(r.dispatchable),
            gw(r.emissions_mtes_pa)
        );
    }
    Ok(())
}

fn build_report(
    spec: &ScenarioSpec,
    default_hdrm: f64,
    sources: &Sources<'_>,
    config: &RunConfig,
) -> Result<ScenarioReport, CliError> {
    let hdrm = spec.hdrm.unwrap_or(default_hdrm);
    let (wm, sm) = match (spec.wm, spec.sm, spec.target) {
        (Some(wm), Some(sm), None) => (wm, sm),
        (None, None, Some(target)) => {
            let table = sources.lookup_for(target)?;
            wm_sm_at_hdrm(table, hdrm)?
        }
        _ => {
            return Err(CliError::Usage(format!(
                "scenario {:?} must set either wm+sm or target",
                spec.label
            )))
        }
    };
    let scenario = Scenario::new(hdrm, wm, sm)?;
    let emissions = config.emissions();
    let report = match sources {
        Sources::Stored(doc) => analyze_scenario(
            &spec.label,
            &scenario,
            AccommodatedSource::Grid(doc.require_gw_ws()?),
            &emissions,
        )?,
        Sources::Live { traces, .. } => analyze_scenario(
            &spec.label,
            &scenario,
            AccommodatedSource::Model(traces),
            &emissions,
        )?
        .with_recalculated_efficiencies(
            traces,
            config.efficiency.delta_wm,
            config.efficiency.delta_sm,
        )?,
    };
    Ok(ScenarioReport {
        target: spec.target,
        ..report
    })
}

//! `ingest` and `synth`: produce a normalized trace cache.

use std::fs::File;
use std::path::PathBuf;

use clap::Args;

use headroom_core::ingest::{cache, fill_gaps, parse_records, synth};

use crate::config::RunConfig;
use crate::output::gw;
use crate::CliError;

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Raw 5-minute records CSV
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,

    /// Where to write the normalized trace cache
    #[arg(long, value_name = "FILE", default_value = "traces.csv")]
    pub out: PathBuf,
}

pub fn run_ingest(args: IngestArgs, config: &RunConfig) -> Result<(), CliError> {
    let path = args
        .csv
        .as_ref()
        .or(config.data.csv.as_ref())
        .ok_or_else(|| {
            CliError::Usage("ingest needs --csv (or [data].csv in the config)".into())
        })?;
    let file = File::open(path)
        .map_err(|e| CliError::Data(format!("cannot open {}: {e}", path.display())))?;
    let records = parse_records(file)?;
    let parsed = records.len();
    let records = fill_gaps(records)?;
    let filled = records.len() - parsed;

    let mean = |f: fn(&headroom_core::RawRecord) -> f64| {
        records.iter().map(f).sum::<f64>() / records.len() as f64
    };
    let mean_demand = mean(|r| r.demand_gw);
    let mean_nuclear = mean(|r| r.nuclear_gw);
    let mean_wind = mean(|r| r.wind_gw);
    let mean_solar = mean(|r| r.solar_gw);

    let traces = headroom_core::ingest::normalize(&records, config.baselines())?;
    write_cache_file(&traces, &args.out)?;

    println!("parsed {parsed} records, filled {filled} missing slots");
    println!(
        "annual means: demand {} GW, nuclear {} GW, wind {} GW, solar {} GW",
        gw(mean_demand),
        gw(mean_nuclear),
        gw(mean_wind),
        gw(mean_solar)
    );
    println!(
        "suggested headroom (demand less nuclear): {} GW",
        gw(mean_demand - mean_nuclear)
    );
    Ok(())
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// RNG seed; equal seeds give bit-identical years
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Where to write the normalized trace cache
    #[arg(long, value_name = "FILE", default_value = "traces.csv")]
    pub out: PathBuf,
}

pub fn run_synth(args: SynthArgs, config: &RunConfig) -> Result<(), CliError> {
    let spec = config.synth.to_spec(config.baselines());
    let traces = synth::synthesize_year(&spec, args.seed)?;
    write_cache_file(&traces, &args.out)?;
    println!("synthesized year (seed {})", args.seed);
    Ok(())
}

fn write_cache_file(
    traces: &headroom_core::WeeklyTraceSet,
    path: &PathBuf,
) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::Data(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    let file = File::create(path)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
    cache::write_cache(traces, std::io::BufWriter::new(file))?;
    println!("wrote {}", path.display());
    Ok(())
}

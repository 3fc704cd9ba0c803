//! Subcommand implementations.

pub mod dynamics;
pub mod ingest;
pub mod point;
pub mod scenario;
pub mod tables;

use std::fs::File;
use std::path::{Path, PathBuf};

use clap::Args;

use headroom_core::ingest::{cache, synth};
use headroom_core::WeeklyTraceSet;

use crate::config::RunConfig;
use crate::CliError;

/// Trace-set source, one of three; flags override the config file.
#[derive(Debug, Args)]
pub struct DataOpts {
    /// Raw 5-minute records CSV (timestamp,demand_gw,wind_gw,solar_gw,nuclear_gw)
    #[arg(long, value_name = "FILE")]
    pub data: Option<PathBuf>,

    /// Normalized trace cache written by `ingest` or `synth`
    #[arg(long, value_name = "FILE")]
    pub cache: Option<PathBuf>,

    /// Generate a synthetic year with this seed
    #[arg(long, value_name = "SEED")]
    pub synth_seed: Option<u64>,
}

impl DataOpts {
    pub fn resolve(&self, config: &RunConfig) -> Result<WeeklyTraceSet, CliError> {
        let given = [
            self.data.is_some(),
            self.cache.is_some(),
            self.synth_seed.is_some(),
        ];
        if given.iter().filter(|g| **g).count() > 1 {
            return Err(CliError::Usage(
                "give at most one of --data, --cache, --synth-seed".into(),
            ));
        }
        // flags take precedence over the config file
        if let Some(path) = &self.data {
            return load_raw(path, config);
        }
        if let Some(path) = &self.cache {
            return load_cache(path, config);
        }
        if let Some(seed) = self.synth_seed {
            return synthesize(seed, config);
        }
        if let Some(path) = &config.data.csv {
            return load_raw(path, config);
        }
        if let Some(path) = &config.data.cache {
            return load_cache(path, config);
        }
        if let Some(seed) = config.data.synth_seed {
            return synthesize(seed, config);
        }
        Err(CliError::Usage(
            "no data source: give --data, --cache or --synth-seed (or set [data] in the config)"
                .into(),
        ))
    }
}

fn load_cache(path: &Path, config: &RunConfig) -> Result<WeeklyTraceSet, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Data(format!("cannot open cache {}: {e}", path.display())))?;
    Ok(cache::read_cache(file, config.baselines())?)
}

fn synthesize(seed: u64, config: &RunConfig) -> Result<WeeklyTraceSet, CliError> {
    let spec = config.synth.to_spec(config.baselines());
    Ok(synth::synthesize_year(&spec, seed)?)
}

fn load_raw(path: &Path, config: &RunConfig) -> Result<WeeklyTraceSet, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Data(format!("cannot open {}: {e}", path.display())))?;
    let records = headroom_core::ingest::parse_records(file)?;
    let records = headroom_core::ingest::fill_gaps(records)?;
    Ok(headroom_core::ingest::normalize(
        &records,
        config.baselines(),
    )?)
}

/// Output directory: flag, then config, then ./out.
pub fn out_dir(flag: Option<&Path>, config: &RunConfig) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| config.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"))
}

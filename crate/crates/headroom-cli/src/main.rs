//! Command-line interface to the headroom curtailment model.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

/// Command failures, carrying the process exit code: 1 usage, 2 data,
/// 3 numeric/range.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<headroom_core::Error> for CliError {
    fn from(e: headroom_core::Error) -> Self {
        if e.is_data_error() {
            CliError::Data(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(
    name = "headroom",
    version,
    about = "Wind/solar curtailment model of the GB electricity system: scenario \
             evaluation, incremental fleet efficiencies, investment planning and \
             lookup tables, emissions reports and weekly dynamics"
)]
struct Cli {
    /// TOML configuration file; defaults reproduce the reference constants
    #[arg(short, long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate raw 5-minute records and cache normalized traces
    Ingest(commands::ingest::IngestArgs),
    /// Generate a deterministic synthetic year and cache it
    Synth(commands::ingest::SynthArgs),
    /// Evaluate one scenario (accommodated, curtailed, dispatchable)
    Eval(commands::point::EvalArgs),
    /// Incremental wind/solar efficiencies at one scenario
    Efficiency(commands::point::EfficiencyArgs),
    /// Build the accommodated-generation and wind-efficiency lattices
    Sweep(commands::tables::SweepArgs),
    /// Build the investment planning table
    Plan(commands::tables::PlanArgs),
    /// Build the investment lookup tables
    Lookup(commands::tables::LookupArgs),
    /// Emissions and decarbonisation reports for a scenario list
    Scenario(commands::scenario::ScenarioArgs),
    /// Weekly deficit/excess accounting and slew detection
    Dynamics(commands::dynamics::DynamicsArgs),
    /// Efficiency-vs-fleet-size curve data for plotting
    Figure2(commands::tables::Figure2Args),
    /// Fleet-size-vs-headroom line data for plotting
    Figure3(commands::tables::Figure3Args),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = RunConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Ingest(args) => commands::ingest::run_ingest(args, &config),
        Command::Synth(args) => commands::ingest::run_synth(args, &config),
        Command::Eval(args) => commands::point::run_eval(args, &config),
        Command::Efficiency(args) => commands::point::run_efficiency(args, &config),
        Command::Sweep(args) => commands::tables::run_sweep(args, &config),
        Command::Plan(args) => commands::tables::run_plan(args, &config),
        Command::Lookup(args) => commands::tables::run_lookup(args, &config),
        Command::Scenario(args) => commands::scenario::run(args, &config),
        Command::Dynamics(args) => commands::dynamics::run(args, &config),
        Command::Figure2(args) => commands::tables::run_figure2(args, &config),
        Command::Figure3(args) => commands::tables::run_figure3(args, &config),
    }
}

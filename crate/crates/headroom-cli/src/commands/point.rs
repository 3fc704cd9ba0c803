//! `eval` and `efficiency`: point queries against the model.

use std::path::PathBuf;

use clap::Args;

use headroom_core::efficiency::efficiency_point;
use headroom_core::model::evaluate;
use headroom_core::Scenario;

use super::{out_dir, DataOpts};
use crate::config::RunConfig;
use crate::output::{gw, mult, OutputWriter};
use crate::CliError;

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Headroom (demand less nuclear), GW
    #[arg(long)]
    pub hdrm: f64,

    /// Wind fleet multiplier
    #[arg(long)]
    pub wm: f64,

    /// Solar fleet multiplier
    #[arg(long)]
    pub sm: f64,

    /// Also write the 52 weekly accommodated means as CSV
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

pub fn run_eval(args: EvalArgs, config: &RunConfig) -> Result<(), CliError> {
    let traces = args.data.resolve(config)?;
    let scenario = Scenario::new(args.hdrm, args.wm, args.sm)?;
    let r = evaluate(&traces, &scenario)?;

    println!(
        "scenario: hdrm {} GW, wm {}, sm {}",
        gw(scenario.hdrm),
        mult(scenario.wm),
        mult(scenario.sm)
    );
    println!("available     {} GW", gw(r.available));
    println!("accommodated  {} GW", gw(r.accommodated));
    println!("curtailed     {} GW", gw(r.curtailed));
    println!("dispatchable  {} GW", gw(r.dispatchable));

    if let Some(dir) = &args.out_dir {
        let mut writer = OutputWriter::new(&out_dir(Some(dir), config))?;
        let mut csv = String::from("week,accommodated_gw\n");
        for (i, w) in r.weekly_accommodated.iter().enumerate() {
            csv.push_str(&format!("{},{}\n", i + 1, gw(*w)));
        }
        writer.write("eval_weekly.csv", &csv)?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct EfficiencyArgs {
    #[command(flatten)]
    pub data: DataOpts,

    #[arg(long)]
    pub hdrm: f64,

    #[arg(long)]
    pub wm: f64,

    #[arg(long)]
    pub sm: f64,

    /// Forward-difference step for the wind multiplier
    #[arg(long)]
    pub delta_wm: Option<f64>,

    /// Forward-difference step for the solar multiplier
    #[arg(long)]
    pub delta_sm: Option<f64>,
}

pub fn run_efficiency(args: EfficiencyArgs, config: &RunConfig) -> Result<(), CliError> {
    let traces = args.data.resolve(config)?;
    let scenario = Scenario::new(args.hdrm, args.wm, args.sm)?;
    let point = efficiency_point(
        &traces,
        &scenario,
        args.delta_wm.unwrap_or(config.efficiency.delta_wm),
        args.delta_sm.unwrap_or(config.efficiency.delta_sm),
    )?;
    println!(
        "scenario: hdrm {} GW, wm {}, sm {}",
        gw(scenario.hdrm),
        mult(scenario.wm),
        mult(scenario.sm)
    );
    println!("iwe {}", mult(point.iwe));
    println!("ise {}", mult(point.ise));
    Ok(())
}

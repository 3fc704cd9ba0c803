//! `dynamics`: per-week deficit/excess accounting, slew detection and the
//! storage-adequacy comparison.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;

use headroom_core::dynamics::{
    analyze_week, detect_max_up_slew, mackay_slew_estimate, prudent_reserve_gw, storage_adequacy,
    WeeklyDynamics, MAX_SLEW_SLOTS, MIN_SLEW_SLOTS,
};
use headroom_core::model::{evaluate, per_slot_series};
use headroom_core::{Scenario, WEEKS_PER_YEAR};

use super::{out_dir, DataOpts};
use crate::config::RunConfig;
use crate::output::{gw, mult, OutputWriter};
use crate::CliError;

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[command(flatten)]
    pub data: DataOpts,

    /// Headroom, GW (default from config)
    #[arg(long)]
    pub hdrm: Option<f64>,

    /// Wind fleet multiplier (default 8.96, the 2035 planning level)
    #[arg(long, default_value_t = 8.96)]
    pub wm: f64,

    /// Solar fleet multiplier (default 6.1, the 2035 planning level)
    #[arg(long, default_value_t = 6.1)]
    pub sm: f64,

    /// Also write the per-slot series of this week (1..=52)
    #[arg(long, value_name = "WEEK")]
    pub week: Option<usize>,

    /// Add rising-slew columns to the weekly report
    #[arg(long)]
    pub up_slews: bool,

    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

pub fn run(args: DynamicsArgs, config: &RunConfig) -> Result<(), CliError> {
    let mut writer = OutputWriter::new(&out_dir(args.out_dir.as_deref(), config))?;
    let result = inner(&args, config, &mut writer);
    if result.is_err() {
        writer.discard_all();
    }
    result
}

fn inner(
    args: &DynamicsArgs,
    config: &RunConfig,
    writer: &mut OutputWriter,
) -> Result<(), CliError> {
    let traces = args.data.resolve(config)?;
    let scenario = Scenario::new(args.hdrm.unwrap_or(config.dynamics.hdrm), args.wm, args.sm)?;

    // weeks are independent; keep the loop simple and deterministic
    type UpSlew = (f64, usize, usize);
    let mut weeks: Vec<(WeeklyDynamics, Option<UpSlew>)> = Vec::with_capacity(WEEKS_PER_YEAR);
    for week in 1..=WEEKS_PER_YEAR {
        let series = per_slot_series(&traces, &scenario, week)?;
        let dynamics = analyze_week(week, &series)?;
        let up = args.up_slews.then(|| {
            let e = detect_max_up_slew(&series.available, MIN_SLEW_SLOTS, MAX_SLEW_SLOTS);
            (e.rate_gw_per_h, e.start_slot, e.end_slot)
        });
        weeks.push((dynamics, up));
    }

    let mut csv = String::from(
        "week,mean_deficit_gw,max_deficit_gw,mean_excess_gw,max_excess_gw,\
         deficit_energy_gwh,excess_energy_gwh,max_down_slew_gw_per_h,slew_start_min,slew_end_min",
    );
    if args.up_slews {
        csv.push_str(",max_up_slew_gw_per_h,up_start_min,up_end_min");
    }
    csv.push('\n');
    for (d, up) in &weeks {
        let _ = write!(
            csv,
            "{},{},{},{},{},{:.1},{:.1},{},{},{}",
            d.week,
            gw(d.mean_deficit),
            gw(d.max_deficit),
            gw(d.mean_excess),
            gw(d.max_excess),
            d.deficit_energy_gwh,
            d.excess_energy_gwh,
            gw(d.max_down_slew.rate_gw_per_h),
            d.max_down_slew.start_slot * 5,
            d.max_down_slew.end_slot * 5
        );
        if let Some((rate, start, end)) = up {
            let _ = write!(csv, ",{},{},{}", gw(*rate), start * 5, end * 5);
        }
        csv.push('\n');
    }
    writer.write("weekly_dynamics.csv", &csv)?;

    if let Some(week) = args.week {
        let series = per_slot_series(&traces, &scenario, week)?;
        let mut slots = String::from("time_min,available,hdrm,accommodated,deficit,excess\n");
        for (i, a) in series.available.iter().enumerate() {
            let _ = writeln!(
                slots,
                "{},{},{},{},{},{}",
                i * 5,
                gw(*a),
                gw(series.hdrm),
                gw(series.accommodated[i]),
                gw(series.deficit[i]),
                gw((a - series.hdrm).max(0.0))
            );
        }
        writer.write(&format!("week_{week}_slots.csv"), &slots)?;
    }

    // headline numbers across the year
    let worst_deficit = weeks
        .iter()
        .map(|(d, _)| d)
        .max_by(|a, b| a.deficit_energy_gwh.total_cmp(&b.deficit_energy_gwh))
        .expect("52 weeks");
    let peak_deficit = weeks.iter().map(|(d, _)| d.max_deficit).fold(0.0, f64::max);
    let steepest = weeks
        .iter()
        .map(|(d, _)| d)
        .max_by(|a, b| {
            a.max_down_slew
                .rate_gw_per_h
                .total_cmp(&b.max_down_slew.rate_gw_per_h)
        })
        .expect("52 weeks");
    let adequacy = storage_adequacy(worst_deficit.deficit_energy_gwh, &config.storage_ledger());
    let annual = evaluate(&traces, &scenario)?;
    let mackay = mackay_slew_estimate(annual.available, config.dynamics.mackay_coefficient);

    let mut md = String::from("# Weekly dynamics\n\n");
    let _ = writeln!(
        md,
        "- scenario: hdrm {} GW, wm {}, sm {}",
        gw(scenario.hdrm),
        mult(scenario.wm),
        mult(scenario.sm)
    );
    let _ = writeln!(
        md,
        "- worst deficit week: {} ({} GWh over {} h, mean {} GW)",
        worst_deficit.week,
        gw(worst_deficit.deficit_energy_gwh),
        worst_deficit.span_hours,
        gw(worst_deficit.mean_deficit)
    );
    let _ = writeln!(
        md,
        "- peak deficit {} GW; prudent dispatchable reserve {} GW",
        gw(peak_deficit),
        gw(prudent_reserve_gw(peak_deficit))
    );
    let _ = writeln!(
        md,
        "- steepest decline: week {}, {} GW/h (rule-of-thumb estimate at mean available {} GW: {} GW/h)",
        steepest.week,
        gw(steepest.max_down_slew.rate_gw_per_h),
        gw(annual.available),
        gw(mackay)
    );
    let _ = writeln!(md, "\n## Storage against the worst weekly deficit\n");
    let _ = writeln!(md, "| source | GWh | coverage |");
    let _ = writeln!(md, "|---|---:|---:|");
    for (name, capacity, coverage) in &adequacy.per_source {
        let _ = writeln!(
            md,
            "| {name} | {capacity} | {} |",
            coverage
                .map(|c| format!("{:.1}%", 100.0 * c))
                .unwrap_or_else(|| "n/a".into())
        );
    }
    let _ = writeln!(
        md,
        "| total | {} | {} |",
        adequacy.total_capacity_gwh,
        adequacy
            .total_coverage
            .map(|c| format!("{:.1}%", 100.0 * c))
            .unwrap_or_else(|| "n/a".into())
    );
    writer.write("dynamics_summary.md", &md)?;

    println!(
        "worst deficit week {}: {} GWh; peak deficit {} GW; steepest decline {} GW/h",
        worst_deficit.week,
        gw(worst_deficit.deficit_energy_gwh),
        gw(peak_deficit),
        gw(steepest.max_down_slew.rate_gw_per_h)
    );
    Ok(())
}

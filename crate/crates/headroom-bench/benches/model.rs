//! Hot-path benchmarks: scenario evaluation, weekly series, slew detection.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use headroom_bench::bench_traces;
use headroom_core::dynamics::{detect_max_down_slew, MAX_SLEW_SLOTS, MIN_SLEW_SLOTS};
use headroom_core::efficiency::incremental_wind_efficiency;
use headroom_core::model::{evaluate, per_slot_series};
use headroom_core::Scenario;

fn bench_evaluate(c: &mut Criterion) {
    let traces = bench_traces();
    let scenario = Scenario::new(48.5, 8.96, 6.1).unwrap();
    c.bench_function("evaluate_full_year", |b| {
        b.iter(|| evaluate(black_box(&traces), black_box(&scenario)).unwrap())
    });
    c.bench_function("incremental_wind_efficiency", |b| {
        b.iter(|| {
            incremental_wind_efficiency(black_box(&traces), black_box(&scenario), 0.01).unwrap()
        })
    });
}

fn bench_weekly(c: &mut Criterion) {
    let traces = bench_traces();
    let scenario = Scenario::new(48.5, 8.96, 6.1).unwrap();
    c.bench_function("per_slot_series_week", |b| {
        b.iter(|| per_slot_series(black_box(&traces), black_box(&scenario), 3).unwrap())
    });
    let series = per_slot_series(&traces, &scenario, 3).unwrap();
    c.bench_function("detect_max_down_slew_week", |b| {
        b.iter(|| {
            detect_max_down_slew(black_box(&series.available), MIN_SLEW_SLOTS, MAX_SLEW_SLOTS)
        })
    });
}

criterion_group!(benches, bench_evaluate, bench_weekly);
criterion_main!(benches);

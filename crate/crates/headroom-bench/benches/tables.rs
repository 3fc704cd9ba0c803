//! Table-pipeline benchmarks: lattice building and the interpolation stack.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use headroom_bench::bench_traces;
use headroom_core::tables::{
    build_grid, build_lookup_tables, build_planning_table, interp_gw_ws, IseSource,
};
use headroom_core::{GridAxes, Scenario};

fn bench_grid(c: &mut Criterion) {
    let traces = bench_traces();
    // a reduced lattice keeps the per-iteration cost benchmarkable
    let axes = GridAxes {
        hdrm: vec![40.0],
        wm: vec![2.0, 4.0, 6.0],
        sm: vec![0.0, 4.0],
    };
    let mut group = c.benchmark_group("lattice");
    group.sample_size(20);
    group.bench_function("build_grid_6_points", |b| {
        b.iter(|| build_grid(black_box(&traces), black_box(&axes), 0.01).unwrap())
    });
    group.finish();
}

fn bench_interpolation(c: &mut Criterion) {
    let traces = bench_traces();
    let grid = build_grid(&traces, &GridAxes::default(), 0.01).unwrap();
    let scenario = Scenario::new(48.5, 5.16, 5.69).unwrap();
    c.bench_function("interp_gw_ws", |b| {
        b.iter(|| interp_gw_ws(black_box(&grid.gw_ws), black_box(&scenario)).unwrap())
    });

    let stored = build_planning_table(
        &grid.iwe,
        &[0.7, 0.5, 0.3],
        IseSource::Model {
            traces: &traces,
            delta_sm: 0.01,
        },
    )
    .unwrap();
    c.bench_function("planning_and_lookup_from_arrays", |b| {
        b.iter(|| {
            let planning = build_planning_table(
                black_box(&grid.iwe),
                &[0.7, 0.5, 0.3],
                IseSource::Table(&stored),
            )
            .unwrap();
            build_lookup_tables(&planning, None).unwrap()
        })
    });
}

criterion_group!(benches, bench_grid, bench_interpolation);
criterion_main!(benches);

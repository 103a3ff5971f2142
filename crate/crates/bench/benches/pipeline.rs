use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mcda_bench::{bundled, generated};
use mcda_core::fuzzify::{build_frame, range_memberships, RangeValue};
use mcda_core::sensitivity::{default_grid, sweep_weight_sequential};
use mcda_core::{run_pipeline, sweep_weight, Approach, Method, RunConfig};

fn pipeline(c: &mut Criterion) {
    let ds = bundled();
    let mut group = c.benchmark_group("rank");
    for approach in [Approach::Svns, Approach::Ivfs, Approach::Both, Approach::Classical] {
        let cfg = RunConfig::default().with_approach(approach);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{approach:?}")), &cfg, |b, cfg| {
            b.iter(|| run_pipeline(black_box(&ds), cfg).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("rank_suppliers");
    for n in [8, 32, 128] {
        let ds = generated(7, 10, n);
        let cfg = RunConfig::default();
        group.bench_with_input(BenchmarkId::from_parameter(n), &ds, |b, ds| b.iter(|| run_pipeline(ds, &cfg).unwrap()));
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let ds = bundled();
    let cfg = RunConfig::default();
    let grid = default_grid();
    c.bench_function("sweep_parallel", |b| b.iter(|| sweep_weight(&ds, 6, &grid, Method::Svns, &cfg).unwrap()));
    c.bench_function("sweep_sequential", |b| {
        b.iter(|| sweep_weight_sequential(&ds, 6, &grid, Method::Svns, &cfg).unwrap())
    });
}

fn membership(c: &mut Criterion) {
    let values: Vec<f64> = (0..100).map(|k| k as f64 * 0.37).collect();
    let frame = build_frame(&values, 9).unwrap();
    let r = RangeValue::new(3.1, 17.9).unwrap();
    c.bench_function("range_memberships_9", |b| b.iter(|| range_memberships(&frame, black_box(r)).unwrap()));
}

criterion_group!(benches, pipeline, sweeps, membership);
criterion_main!(benches);

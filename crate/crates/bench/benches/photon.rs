use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tlphoton::detection::capture_scan;
use tlphoton::mode_oracle::{oracle_beta2_level, DiscretizationSpec};
use tlphoton::waveform::right_mover_fields;
use tlphoton::{
    beta2_general, beta2_logkernel, beta2_rightmover, coefficient_functions_rightmover,
    split_pulse_sweep, LineParams,
};
use tlphoton_bench::{canonical, staircase};

fn beta2(c: &mut Criterion) {
    let line = LineParams::natural();
    let v = canonical();
    let f = right_mover_fields(&v, &line);
    c.bench_function("logkernel canonical", |b| {
        b.iter(|| beta2_logkernel(black_box(&v), &line).unwrap())
    });
    let big = staircase(64);
    c.bench_function("logkernel 64 segments", |b| {
        b.iter(|| beta2_logkernel(black_box(&big), &line).unwrap())
    });
    c.bench_function("rightmover canonical", |b| {
        b.iter(|| beta2_rightmover(black_box(&v), &line).unwrap())
    });
    c.bench_function("general canonical", |b| {
        b.iter(|| beta2_general(black_box(&f), &line).unwrap())
    });
}

fn sweep(c: &mut Criterion) {
    let line = LineParams::natural();
    let ws: Vec<f64> = (0..20).map(|i| 4.0 * 1.5f64.powi(i)).collect();
    c.bench_function("split sweep 20 points", |b| {
        b.iter(|| split_pulse_sweep(black_box(&ws), &line).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let line = LineParams::natural();
    let f = right_mover_fields(&canonical(), &line);
    let spec = DiscretizationSpec::for_fields(&f).unwrap();
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("base level", |b| {
        b.iter(|| oracle_beta2_level(black_box(&f), &line, &spec))
    });
    g.finish();
}

fn detection(c: &mut Criterion) {
    let line = LineParams::natural();
    let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
    let widths: Vec<f64> = (0..8).map(|i| 2.0 * 2f64.powi(i)).collect();
    let mut g = c.benchmark_group("detection");
    g.sample_size(10);
    g.bench_function("capture scan 8 windows", |b| {
        b.iter(|| capture_scan(black_box(&th), &widths, &line, None).unwrap())
    });
    g.finish();
}

criterion_group!(benches, beta2, sweep, oracle, detection);
criterion_main!(benches);

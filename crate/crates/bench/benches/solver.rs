use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mrap_bench::{markoff, RADICANDS};
use mrap_core::oracle::{brute_force_ap, HeightBound};
use mrap_core::qfield::unit_group;
use mrap_core::scan::{scan, ScanSpec};
use mrap_core::solve_ap;

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_ap");
    for &r in RADICANDS {
        let inst = markoff(r, 1);
        group.bench_with_input(BenchmarkId::from_parameter(r), &inst, |b, inst| {
            b.iter(|| solve_ap(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn bench_units(c: &mut Criterion) {
    c.bench_function("unit_group_94", |b| {
        b.iter(|| unit_group(black_box(mrap_core::FieldDesc::new(94).unwrap())))
    });
}

fn bench_oracle(c: &mut Criterion) {
    let inst = markoff(2, 1);
    let h = HeightBound::new(20).unwrap();
    c.bench_function("brute_force_sqrt2_h20", |b| b.iter(|| brute_force_ap(black_box(&inst), h)));
}

fn bench_scan(c: &mut Criterion) {
    let spec = ScanSpec::markoff(1, 5, 2, 60);
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("d5_disc60", |b| b.iter(|| scan(black_box(&spec)).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_solve, bench_units, bench_oracle, bench_scan);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gradet::{gber0, gdet0, gdet0_leibniz, gdet0_via_crossed, gdet_via_row_decomposition, graded_trace};
use gradet_bench::{degree_zero_matrix, super_matrix};
use std::hint::black_box;

fn gdet0_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("gdet0");
    for n in 2..=4 {
        let x = degree_zero_matrix("quaternions", n, 1);
        group.bench_with_input(BenchmarkId::new("twist", n), &x, |b, x| b.iter(|| gdet0(black_box(x)).unwrap()));
        group.bench_with_input(BenchmarkId::new("leibniz", n), &x, |b, x| {
            b.iter(|| gdet0_leibniz(black_box(x), None).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("crossed", n), &x, |b, x| {
            b.iter(|| gdet0_via_crossed(black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn row_decomposition(c: &mut Criterion) {
    let x = degree_zero_matrix("clifford:1,1", 3, 2);
    let sigma = x.algebra().canonical_multiplier().unwrap();
    c.bench_function("row_decomposition/clifford:1,1/3", |b| {
        b.iter(|| gdet_via_row_decomposition(black_box(&x), &sigma).unwrap())
    });
}

fn berezinian(c: &mut Criterion) {
    let mut group = c.benchmark_group("gber0");
    for (r0, r1) in [(1, 1), (2, 1), (2, 2)] {
        let x = super_matrix("grassmann:3", r0, r1, 3);
        group.bench_with_input(BenchmarkId::new("grassmann:3", format!("{r0}|{r1}")), &x, |b, x| {
            b.iter(|| gber0(black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn trace(c: &mut Criterion) {
    let x = degree_zero_matrix("clifford:2,1", 4, 4);
    c.bench_function("trace/clifford:2,1/4", |b| b.iter(|| graded_trace(black_box(&x)).unwrap()));
}

criterion_group!(benches, gdet0_routes, row_decomposition, berezinian, trace);
criterion_main!(benches);

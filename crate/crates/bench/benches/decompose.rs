use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qgs_bench::kronecker_preinjective;
use qgs_core::oracle::{cell_points, grassmannian_points};
use qgs_core::{decompose, fixtures, glue, BetaSubset, DimensionVector};

fn decomposition(c: &mut Criterion) {
    let w = fixtures::del_pezzo();
    let e = DimensionVector(vec![2, 1, 1, 1]);
    c.bench_function("decompose/del_pezzo", |b| {
        b.iter(|| decompose(&w, &e).unwrap())
    });
    let mut group = c.benchmark_group("decompose/kronecker");
    for n in [3usize, 5, 7] {
        let w = kronecker_preinjective(n);
        let e = DimensionVector(vec![n / 2, n / 2 + 1]);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| decompose(&w, &e).unwrap())
        });
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let w = fixtures::kronecker_3_4();
    let beta = BetaSubset::new(7, &[3, 6, 7]).unwrap();
    c.bench_function("cell_points/kronecker_q3", |b| {
        b.iter(|| cell_points(&w, &beta, 3, 10_000_000).unwrap())
    });
    let rep = fixtures::del_pezzo_representation();
    let e = DimensionVector(vec![2, 1, 1, 1]);
    c.bench_function("grassmannian_points/del_pezzo_q3", |b| {
        b.iter(|| grassmannian_points(&rep, &e, 3, 10_000_000).unwrap())
    });
}

fn gluing(c: &mut Criterion) {
    let spec = fixtures::s4_gluing();
    c.bench_function("glue/s4", |b| b.iter(|| glue(&spec).unwrap()));
}

criterion_group!(benches, decomposition, oracles, gluing);
criterion_main!(benches);

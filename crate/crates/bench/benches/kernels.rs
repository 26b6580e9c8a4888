use criterion::{black_box, criterion_group, criterion_main, Criterion};

use stabmod_bench::{code, doubled_wen_metric_group, upper_boundary};
use stabmod_core::{groebner, kernel};

fn bulk(c: &mut Criterion) {
    let toric3 = code("toric3");
    c.bench_function("groebner basis of toric3 stabilizers", |b| b.iter(|| groebner(black_box(&toric3.submodule())).unwrap()));
    c.bench_function("syndrome kernel of toric3", |b| b.iter(|| kernel(black_box(&toric3.syndrome_matrix())).unwrap()));
    let toric6 = code("toric6");
    c.bench_function("charge module of toric6", |b| b.iter(|| black_box(&toric6).charge_module().unwrap()));
}

fn boundary(c: &mut Criterion) {
    let split = code("split");
    c.bench_function("upper boundary of the split code", |b| b.iter(|| upper_boundary(black_box(&split))));
    let toric = code("toric");
    c.bench_function("upper boundary of toric", |b| b.iter(|| upper_boundary(black_box(&toric))));
}

fn metric(c: &mut Criterion) {
    let e = doubled_wen_metric_group();
    c.bench_function("lagrangian search on doubled wen", |b| b.iter(|| black_box(&e).lagrangian_search()));
}

criterion_group!(benches, bulk, boundary, metric);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, Criterion};

use frobsplit_core::builtins;
use frobsplit_core::{decompose, DecomposeOptions, DEFAULT_CAP};

fn bench_decompose(c: &mut Criterion) {
    let a3 = builtins::a3().build(DEFAULT_CAP).unwrap();
    let z4 = builtins::z4_f2().build(DEFAULT_CAP).unwrap();
    let cyclic5 = builtins::cyclic(5).unwrap().build(DEFAULT_CAP).unwrap();
    let mut group = c.benchmark_group("decompose");
    group.sample_size(10);
    group.bench_function("a3 e=2", |b| {
        b.iter(|| decompose(&a3, "a3", 2, DecomposeOptions::default()).unwrap())
    });
    group.bench_function("a3 e=3", |b| {
        b.iter(|| decompose(&a3, "a3", 3, DecomposeOptions::default()).unwrap())
    });
    group.bench_function("z4 e=3", |b| {
        b.iter(|| decompose(&z4, "z4", 3, DecomposeOptions::default()).unwrap())
    });
    group.bench_function("cyclic-5 e=1", |b| {
        b.iter(|| decompose(&cyclic5, "cyclic-5", 1, DecomposeOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_decompose);
criterion_main!(benches);

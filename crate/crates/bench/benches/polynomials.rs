use criterion::{criterion_group, criterion_main, Criterion};

use frobsplit_core::fsing::{p_cubed_suite, verify_moore_identity};
use frobsplit_core::poly::moore_determinant;
use frobsplit_core::{FieldElement, FieldSpec, FracPolynomial};

fn bench_polynomials(c: &mut Criterion) {
    let f5 = FieldSpec::prime(5).unwrap();
    let x = FracPolynomial::vars(f5, 4);
    let sum = x.iter().fold(FracPolynomial::zero(f5, 4), |acc, v| &acc + v);
    c.bench_function("(x1+x2+x3+x4)^10 over F_5", |b| b.iter(|| sum.pow(10)));
    let sq = sum.pow(5);
    c.bench_function("product of two 4-variable polynomials", |b| {
        b.iter(|| sq.mul(&sum.pow(4)))
    });
    c.bench_function("Moore determinant m=3 over F_5", |b| {
        b.iter(|| moore_determinant(&x[..3], 3).unwrap())
    });

    let k = FieldSpec::perfect_rational(3).unwrap();
    let t = FieldElement::t(k).unwrap();
    c.bench_function("root and power in F_3(t)^perf", |b| {
        b.iter(|| (&t + &FieldElement::one(k)).root(3).pow(7).frobenius(2))
    });

    let mut group = c.benchmark_group("order p^3 group");
    group.sample_size(10);
    group.bench_function("identity p=5", |b| b.iter(|| verify_moore_identity(5).unwrap()));
    group.bench_function("suite p=3", |b| b.iter(|| p_cubed_suite(3).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_polynomials);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symineq::search::{float_ratio, float_ratio_gradient};
use symineq::{check_main, elementary_symmetric, elementary_symmetric_by_enumeration, proof_identity, SearchConfig};
use symineq_bench::{rational_vector, simplex_point};

fn elementary(c: &mut Criterion) {
    let mut group = c.benchmark_group("elementary_symmetric");
    for n in [8, 12, 16] {
        let v = rational_vector(n, 1);
        let k = n / 2;
        group.bench_with_input(BenchmarkId::new("dp", n), &v, |b, v| {
            b.iter(|| elementary_symmetric(black_box(v), k).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("enumeration", n), &v, |b, v| {
            b.iter(|| elementary_symmetric_by_enumeration(black_box(v), k).unwrap())
        });
    }
    group.finish();
}

fn main_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_main");
    for n in [4, 8, 10] {
        let v = rational_vector(n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| check_main(black_box(v), n / 2).unwrap())
        });
    }
    group.finish();
}

fn identity(c: &mut Criterion) {
    let v = rational_vector(8, 3);
    c.bench_function("proof_identity/8", |b| {
        b.iter(|| proof_identity(black_box(&v), 4).unwrap())
    });
}

fn float_objective(c: &mut Criterion) {
    let x = simplex_point(6, 4);
    c.bench_function("float_ratio/6", |b| b.iter(|| float_ratio(black_box(&x), 3)));
    c.bench_function("float_ratio_gradient/6", |b| {
        b.iter(|| float_ratio_gradient(black_box(&x), 3))
    });
    let config = SearchConfig {
        seed: 5,
        ..SearchConfig::new(5, 3)
    };
    c.bench_function("maximize_ratio/5_3", |b| {
        b.iter(|| symineq::maximize_ratio(black_box(&config)).unwrap())
    });
}

criterion_group!(benches, elementary, main_check, identity, float_objective);
criterion_main!(benches);

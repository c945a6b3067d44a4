use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use robin_core::interval::{solve_alpha, solve_beta0, solve_beta1};
use robin_core::{enumerate_spectrum, find_crossings, find_h9_star, PairIndex, RobinParam};

fn interval_roots(c: &mut Criterion) {
    let h = RobinParam::new(-4.0).unwrap();
    c.bench_function("beta0", |b| b.iter(|| solve_beta0(black_box(h)).unwrap()));
    c.bench_function("beta1", |b| b.iter(|| solve_beta1(black_box(h)).unwrap()));
    c.bench_function("alpha_7", |b| b.iter(|| solve_alpha(7, black_box(h)).unwrap()));
}

fn square(c: &mut Criterion) {
    let h = RobinParam::new(-20.0).unwrap();
    c.bench_function("enumerate_spectrum_k100", |b| {
        b.iter(|| enumerate_spectrum(black_box(h), 100).unwrap())
    });
    c.bench_function("find_h9_star", |b| b.iter(find_h9_star));
    c.bench_function("crossings_22_03", |b| {
        b.iter(|| find_crossings(PairIndex::new(2, 2), PairIndex::new(0, 3), -50.0, -0.01).unwrap())
    });
}

criterion_group!(benches, interval_roots, square);
criterion_main!(benches);

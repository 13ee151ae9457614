use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use soinv_core::so::random_so;
use soinv_core::{q_fast, q_naive, Complex64, GaussianRational, Matrix};

fn args<T: soinv_core::Scalar>(n: usize, seed: u64) -> Vec<Matrix<T>> {
    (0..n as u64).map(|k| random_so::<T>(2 * n, seed + k).unwrap()).collect()
}

fn fast_vs_naive(c: &mut Criterion) {
    let mut group = c.benchmark_group("q_exact");
    for n in 1..=4 {
        let a = args::<GaussianRational>(n, 7);
        group.bench_with_input(BenchmarkId::new("fast", 2 * n), &a, |b, a| b.iter(|| q_fast(black_box(a))));
        group.bench_with_input(BenchmarkId::new("naive", 2 * n), &a, |b, a| b.iter(|| q_naive(black_box(a))));
    }
    group.finish();
}

fn fast_float(c: &mut Criterion) {
    let mut group = c.benchmark_group("q_fast_float");
    group.sample_size(10);
    for n in [5, 7] {
        let a = args::<Complex64>(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(2 * n), &a, |b, a| b.iter(|| q_fast(black_box(a))));
    }
    group.finish();
}

criterion_group!(benches, fast_vs_naive, fast_float);
criterion_main!(benches);

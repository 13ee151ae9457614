use criterion::{black_box, criterion_group, criterion_main, Criterion};
use soinv_core::analysis::{commutant_dimension, so_conjugacy_certificate};
use soinv_core::report::counterexample_params;
use soinv_core::so::{rho_construction, sigma_involution};
use soinv_core::Tolerance;

fn counterexample(c: &mut Criterion) {
    let tol = Tolerance::default();
    let (a5, _) = counterexample_params(7, 0).unwrap();
    let rho = rho_construction(7, 17, 19, &a5, None, &tol).unwrap();
    let sigma = sigma_involution(&rho).unwrap();
    let gens: Vec<_> = rho.generators().values().cloned().collect();

    let mut group = c.benchmark_group("counterexample_n7");
    group.sample_size(10);
    group.bench_function("commutant", |b| b.iter(|| commutant_dimension(black_box(&gens), &tol)));
    group.bench_function("certificate", |b| {
        b.iter(|| so_conjugacy_certificate(black_box(&rho), black_box(&sigma), &tol))
    });
    group.finish();
}

criterion_group!(benches, counterexample);
criterion_main!(benches);

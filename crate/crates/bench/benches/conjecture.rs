use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sfdc_core::conjecture::{verify_conjectures_with, VerifyOptions};
use sfdc_core::{build_system, solve_linear, Mode};

fn system(c: &mut Criterion) {
    let mut group = c.benchmark_group("conjecture_system");
    group.sample_size(10);
    for k in [2usize, 3, 4] {
        group.bench_function(BenchmarkId::new("build", k), |b| b.iter(|| build_system(k).unwrap()));
    }
    for k in [3usize, 4] {
        let sys = build_system(k).unwrap();
        group.bench_function(BenchmarkId::new("solve", k), |b| b.iter(|| solve_linear(&sys.system).unwrap()));
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("conjecture_verify");
    group.sample_size(10);
    group.bench_function("k3_symbolic", |b| {
        b.iter(|| {
            verify_conjectures_with(3, &VerifyOptions { mode: Mode::Symbolic, ..VerifyOptions::default() }).unwrap()
        })
    });
    let numeric = VerifyOptions { mode: Mode::Numeric, n_samples: vec![3, 5], ..VerifyOptions::default() };
    group.bench_function("k4_numeric_n3_n5", |b| b.iter(|| verify_conjectures_with(4, &numeric).unwrap()));
    group.finish();
}

criterion_group!(benches, system, verify);
criterion_main!(benches);

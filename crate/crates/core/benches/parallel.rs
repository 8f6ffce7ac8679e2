use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tripole_core::hecke::{residue_histogram, GaussianModulus};
use tripole_core::{catalogue, oracle_sweep, projection_sweep, sweep, AbelianModel, Budget, CatalogueSpec, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn models(max_order: u32) -> Vec<AbelianModel> {
    let spec = CatalogueSpec { max_order, ..CatalogueSpec::default() };
    catalogue(&spec).unwrap().iter().map(|e| e.model()).collect()
}

fn bench_sweep(c: &mut Criterion) {
    let models = models(32);
    let mut group = c.benchmark_group("exhaustive_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep(black_box(&models), Budget::Exhaustive { max_triples: None }, exec))
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let models = models(16);
    let mut group = c.benchmark_group("oracle_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| oracle_sweep(black_box(&models), exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("projection", name), &exec, |b, &exec| {
            b.iter(|| projection_sweep(black_box(&models), exec).unwrap())
        });
    }
    group.finish();
}

fn bench_histogram(c: &mut Criterion) {
    let m = GaussianModulus::from_parts(7, 0).unwrap();
    let mut group = c.benchmark_group("residue_histogram_1e6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| residue_histogram(black_box(&m), 1_000_000, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_oracle, bench_histogram);
criterion_main!(benches);

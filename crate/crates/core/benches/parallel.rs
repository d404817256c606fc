use boolnet::genlab::{gen_arbitrary, gen_circuit_free, GenSpec};
use boolnet::reggraph::{check_basic_inequality_with, extract_regulatory_graph_with};
use boolnet::{build_stg_with, verify_robert_with, Exec, UpdateMode, VerifyOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn stg(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_stg");
    group.sample_size(10);
    for n in [12, 16] {
        let model = gen_arbitrary(&GenSpec::arbitrary(n, 7)).unwrap();
        for mode in [UpdateMode::Synchronous, UpdateMode::Asynchronous] {
            for (name, exec) in STRATEGIES {
                let id = BenchmarkId::new(format!("{mode}/{name}"), n);
                group.bench_with_input(id, &model, |b, m| {
                    b.iter(|| build_stg_with(black_box(m), &mode, exec).unwrap())
                });
            }
        }
    }
    group.finish();
}

fn regulatory_graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract_regulatory_graph");
    group.sample_size(10);
    let model = gen_arbitrary(&GenSpec::arbitrary(18, 3)).unwrap();
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| extract_regulatory_graph_with(black_box(&model), exec))
        });
    }
    group.finish();
}

fn basic_inequality(c: &mut Criterion) {
    let mut group = c.benchmark_group("basic_inequality");
    group.sample_size(10);
    let model = gen_arbitrary(&GenSpec::arbitrary(10, 5)).unwrap();
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| check_basic_inequality_with(black_box(&model), exec).unwrap())
        });
    }
    group.finish();
}

fn gauss_seidel(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_seidel");
    group.sample_size(10);
    let model = gen_arbitrary(&GenSpec::arbitrary(18, 11)).unwrap();
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(&model).gauss_seidel_with(exec))
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_robert");
    group.sample_size(10);
    let model = gen_circuit_free(&GenSpec::circuit_free(14, 42, 0.4)).unwrap();
    for (name, exec) in STRATEGIES {
        let opts = VerifyOptions { exec, cap: None };
        group.bench_function(name, |b| {
            b.iter(|| {
                verify_robert_with(black_box(&model), &UpdateMode::Asynchronous, opts).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    stg,
    regulatory_graph,
    basic_inequality,
    gauss_seidel,
    verify
);
criterion_main!(benches);

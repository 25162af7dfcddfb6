use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use eicat::classifier::present_skeleton;
use eicat::constructors::{corpus, CorpusLimits};
use eicat::exec::Execution;
use eicat::freeness::is_free_with;
use eicat::linalg::FieldSpec;
use eicat::verify::verify_all;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn verify_corpus(c: &mut Criterion) {
    let instances: Vec<_> = corpus(7, &CorpusLimits::default(), 20)
        .into_iter()
        .map(|e| (e.name, e.category))
        .collect();
    let fields: Vec<_> = [0, 2, 3, 5].iter().map(|&p| FieldSpec::new(p).unwrap()).collect();
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| verify_all(black_box(&instances), &fields, 8, exec))
        });
    }
    group.finish();
}

fn freeness(c: &mut Criterion) {
    let presentations: Vec<_> = corpus(11, &CorpusLimits::default(), 40)
        .iter()
        .map(|e| present_skeleton(&e.category).unwrap())
        .collect();
    let mut group = c.benchmark_group("is_free");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| presentations.iter().filter(|p| is_free_with(black_box(p), exec).free).count())
        });
    }
    group.finish();
}

criterion_group!(benches, verify_corpus, freeness);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use derangetree_bench::{derangement_corpus, marked_tree_corpus};
use derangetree_core::{forward, inverse, verify_bijection, DEFAULT_VERIFY_LIMIT};

fn bench_forward(c: &mut Criterion) {
    let mut group = c.benchmark_group("forward_all");
    for n in [6, 7, 8] {
        let corpus = derangement_corpus(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &corpus, |b, corpus| {
            b.iter(|| {
                for p in corpus {
                    black_box(forward(p).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_inverse(c: &mut Criterion) {
    let mut group = c.benchmark_group("inverse_all");
    for n in [6, 7, 8] {
        let corpus = marked_tree_corpus(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &corpus, |b, corpus| {
            b.iter(|| {
                for mt in corpus {
                    black_box(inverse(mt).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("n=7", |b| {
        b.iter(|| verify_bijection(black_box(7), DEFAULT_VERIFY_LIMIT).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_forward, bench_inverse, bench_verify);
criterion_main!(benches);

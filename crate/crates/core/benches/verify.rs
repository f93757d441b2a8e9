//! Sequential versus parallel exhaustive walks.
//!
//! `Some(1)` pins the walk to one worker; `None` uses the global pool. Build
//! with `--no-default-features` to measure the sequential fallback alone.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mediant::shadows::verify_theorem;
use mediant::topograph::verify_topograph_proof;
use mediant::tree::{level_iter, TreeKind};
use mediant::with_jobs;

const MODES: [(&str, Option<usize>); 2] = [("sequential", Some(1)), ("parallel", None)];

fn theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem");
    group.sample_size(10);
    for depth in [12usize, 16] {
        for (name, jobs) in MODES {
            group.bench_with_input(BenchmarkId::new(name, depth), &depth, |b, &d| {
                b.iter(|| with_jobs(jobs, || black_box(verify_theorem(d))))
            });
        }
    }
    group.finish();
}

fn topograph(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_topograph");
    group.sample_size(10);
    for depth in [10usize, 14] {
        for (name, jobs) in MODES {
            group.bench_with_input(BenchmarkId::new(name, depth), &depth, |b, &d| {
                b.iter(|| with_jobs(jobs, || black_box(verify_topograph_proof(d))))
            });
        }
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("level_iter");
    for kind in [TreeKind::CalkinWilf, TreeKind::SternBrocot, TreeKind::Matrix] {
        group.bench_function(format!("{kind:?}/12"), |b| {
            b.iter(|| level_iter(kind, 12).count())
        });
    }
    group.finish();
}

criterion_group!(benches, theorem, topograph, enumeration);
criterion_main!(benches);

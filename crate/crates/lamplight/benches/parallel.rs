//! Rayon-backed vs sequential streaming counts, at each prune level.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lamplight::enumerate::{Enumerator, PruneLevel};

fn bench_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    for (level, n) in [
        (PruneLevel::Canonical, 10),
        (PruneLevel::DeadInside, 10),
        (PruneLevel::Full, 10),
    ] {
        let enumerator = Enumerator::new(level, n);
        group.bench_with_input(
            BenchmarkId::new("parallel", format!("{level}/{n}")),
            &n,
            |b, &n| b.iter(|| enumerator.count(n)),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", format!("{level}/{n}")),
            &n,
            |b, &n| b.iter(|| enumerator.count_seq(n)),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_counts);
criterion_main!(benches);

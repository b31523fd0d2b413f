use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use enriques18::enumerator::labelable_types;
use enriques18::realizability::classify;
use enriques18::{CanonicalIndex, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn oracle_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("labelable_types");
    group.sample_size(10);
    for index in [CanonicalIndex::Two, CanonicalIndex::Three, CanonicalIndex::Four] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, index.value()), &index, |b, &i| {
                b.iter(|| labelable_types(i, exec))
            });
        }
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    for index in [CanonicalIndex::Two, CanonicalIndex::Three, CanonicalIndex::Four] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, index.value()), &index, |b, &i| {
                b.iter(|| classify(i, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle_sweep, classification);
criterion_main!(benches);

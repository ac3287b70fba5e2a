use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use zimin_core::counters::{counter, CounterId};
use zimin_core::search::{f_value, Budget, SearchOptions};
use zimin_core::zimin::zimin_index;
use zimin_core::{Exec, RankedSymbol};

fn order4_counters(count: u64) -> Vec<Vec<RankedSymbol>> {
    (0..count)
        .map(|i| counter(&CounterId::new(4, i).unwrap()).unwrap().into_symbols())
        .collect()
}

fn batch_index(c: &mut Criterion) {
    let words = order4_counters(256);
    let mut group = c.benchmark_group("order4_counter_indices");
    group.sample_size(10);
    for (label, exec) in [("serial", Exec::Serial), ("parallel", Exec::Parallel { threads: 0 })] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &exec, |b, &exec| {
            b.iter(|| exec.map(words.clone(), |w| zimin_index(&w).unwrap()))
        });
    }
    group.finish();
}

fn search_f32(c: &mut Criterion) {
    let mut group = c.benchmark_group("f_3_2");
    group.sample_size(10);
    let opts = [
        ("serial", SearchOptions::serial(Budget::unlimited())),
        ("parallel", SearchOptions::parallel(Budget::unlimited(), 0)),
    ];
    for (label, o) in opts {
        group.bench_with_input(BenchmarkId::from_parameter(label), &o, |b, o| {
            b.iter(|| f_value(3, 2, o).unwrap().0)
        });
    }
    group.finish();
}

criterion_group!(benches, batch_index, search_f32);
criterion_main!(benches);

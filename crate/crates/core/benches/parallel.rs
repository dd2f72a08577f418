//! Sequential against rayon execution of the data-parallel scans. Without the
//! `parallel` feature both variants run the sequential loop.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use multifold::analysis::{distance_data_with, verify_packing_with, Scan};
use multifold::constructions::{diagonal_unitrade, hamming_coset_union, l_star, CosetChoice};
use multifold::partitions::{distance_partition, is_equitable_with};
use multifold::search::{classify_extended_unitrades, SearchConfig};
use multifold::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn packing_scan(c: &mut Criterion) {
    // all 25 cosets of the length-6 code over GF(5): 15625 words
    let code = hamming_coset_union(5, &CosetChoice::First(25)).unwrap();
    let mut group = c.benchmark_group("verify_packing full scan H(6,5)");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_packing_with(black_box(&code), 25, 1, Scan::FullSpace, exec).unwrap())
        });
    }
    group.finish();
}

fn distances(c: &mut Criterion) {
    let code = l_star(12).unwrap();
    let mut group = c.benchmark_group("distance_data L*(12)");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| distance_data_with(black_box(&code), None, exec).unwrap())
        });
    }
    group.finish();
}

fn equitable(c: &mut Criterion) {
    let p = distance_partition(&diagonal_unitrade(16).unwrap()).unwrap();
    let mut group = c.benchmark_group("is_equitable H(16,2)");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| is_equitable_with(black_box(&p), exec))
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify n=8");
    group.sample_size(10);
    for (name, exec) in MODES {
        let mut cfg = SearchConfig::new(8);
        cfg.sequential = exec == Exec::Sequential;
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| classify_extended_unitrades(black_box(&cfg)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, packing_scan, distances, equitable, classification);
criterion_main!(benches);

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eschenburg::classify::Threshold;
use eschenburg::enumerate::{EnumerationRequest, Family};
use eschenburg::pipeline::{self, default_threads, SearchConfig};

fn thread_counts() -> Vec<usize> {
    let all = default_threads().max(2);
    vec![1, all]
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_with_ks");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    let req = EnumerationRequest::new(Family::General, 301, 399).unwrap();
    for threads in thread_counts() {
        g.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| pipeline::enumerate_records(&req, t, true).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("homeo_search");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    let req = EnumerationRequest::new(Family::General, 1, 1999).unwrap();
    for threads in thread_counts() {
        let mut cfg = SearchConfig::new(req, Threshold::Homeo)
            .with_threads(threads)
            .unwrap();
        cfg.block_size = 100;
        g.bench_with_input(BenchmarkId::from_parameter(threads), &cfg, |b, cfg| {
            b.iter(|| pipeline::search_pairs(cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, search);
criterion_main!(benches);

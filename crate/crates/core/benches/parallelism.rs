use criterion::{criterion_group, criterion_main, Criterion};

use braidband::braid::BraidWord;
use braidband::profile::{endpoint_sweep, endpoint_sweep_seq};
use braidband::{band_rank_search, band_rank_search_seq, conjugacy_test, conjugacy_test_seq};

fn bench_band_search(c: &mut Criterion) {
    let w = BraidWord::parse("1 2 3", 4).unwrap();
    let mut g = c.benchmark_group("band_rank_search");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| band_rank_search(&w, 3, 4).expect("found")));
    g.bench_function("sequential", |b| {
        b.iter(|| band_rank_search_seq(&w, 3, 4).expect("found"))
    });
    g.finish();
}

fn bench_conjugacy(c: &mut Criterion) {
    let left = BraidWord::parse("1 2 -3 2", 4).unwrap();
    let conj = BraidWord::parse("2 -1 3 2", 4).unwrap();
    let right = left.conjugate(&conj).unwrap();
    let mut g = c.benchmark_group("conjugacy_test");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| conjugacy_test(&left, &right, 1_000_000).unwrap().expect("conjugate"))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| conjugacy_test_seq(&left, &right, 1_000_000).unwrap().expect("conjugate"))
    });
    g.finish();
}

fn bench_profile_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("endpoint_sweep");
    g.bench_function("parallel", |b| b.iter(|| endpoint_sweep(6, 2000, 99)));
    g.bench_function("sequential", |b| b.iter(|| endpoint_sweep_seq(6, 2000, 99)));
    g.finish();
}

criterion_group!(benches, bench_band_search, bench_conjugacy, bench_profile_sweep);
criterion_main!(benches);

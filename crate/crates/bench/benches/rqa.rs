use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use pdrqa::oracle::is_line_start;
use pdrqa::pdseq::{pd_prefix_substitution, pd_prefix_toeplitz, pd_prefix_valuation};
use pdrqa::rplines::{diagonal_histogram, reference_scan, vertical_histogram};
use pdrqa::rqa::quantify;
use pdrqa_bench::{word, PLOT_SIZES};

fn generators(c: &mut Criterion) {
    let n = 1 << 20;
    let mut g = c.benchmark_group("generate");
    g.throughput(Throughput::Elements(n as u64));
    g.bench_function("valuation", |b| b.iter(|| pd_prefix_valuation(black_box(n))));
    g.bench_function("substitution", |b| b.iter(|| pd_prefix_substitution(black_box(n))));
    g.bench_function("toeplitz", |b| b.iter(|| pd_prefix_toeplitz(black_box(n))));
    g.finish();
}

fn diagonal_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("diagonal_histogram");
    g.sample_size(10);
    for n in PLOT_SIZES {
        let x = word(n, 1);
        g.throughput(Throughput::Elements(n * n));
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| diagonal_histogram(&x, n, 1).unwrap())
        });
    }
    let x = word(1 << 10, 1);
    g.bench_function("reference/1024", |b| b.iter(|| reference_scan(&x, 1 << 10, 1).unwrap()));
    g.finish();
}

fn quantifiers(c: &mut Criterion) {
    let n = 1 << 12;
    let x = word(n, 4);
    let hist = diagonal_histogram(&x, n, 4).unwrap();
    c.bench_function("quantify/4096", |b| b.iter(|| quantify(black_box(&hist), 2).unwrap()));
    c.bench_function("vertical_histogram/4096", |b| b.iter(|| vertical_histogram(&x, n, 1).unwrap()));
}

fn line_starts(c: &mut Criterion) {
    let grid = 64u64;
    c.bench_function("is_line_start/grid64", |b| {
        b.iter(|| {
            let mut hits = 0u32;
            for i in 1..=grid {
                for j in (1..=grid).filter(|&j| j != i) {
                    for len in [1, 2, 3, 5, 7, 11, 15, 23] {
                        hits += u32::from(is_line_start(i, j, len).unwrap());
                    }
                }
            }
            hits
        })
    });
}

criterion_group!(benches, generators, diagonal_scan, quantifiers, line_starts);
criterion_main!(benches);

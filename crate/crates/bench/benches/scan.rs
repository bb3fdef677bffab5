use ceresa_core::beauville::{scan_range, QuotientScanner};
use ceresa_core::{QuotientLabel, ScanOptions};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn scanner(c: &mut Criterion) {
    let q = QuotientLabel::new(42, 1, 8).unwrap();
    c.bench_function("scanner_42_1_8", |b| {
        b.iter(|| QuotientScanner::new(black_box(&q)).unwrap().first_witness())
    });
}

fn range(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_range_3_30");
    group.sample_size(10);
    for (name, use_collapse) in [("full", false), ("collapse", true)] {
        group.bench_function(name, |b| b.iter(|| scan_range(3, 30, ScanOptions { use_collapse }).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, scanner, range);
criterion_main!(benches);

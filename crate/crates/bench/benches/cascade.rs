use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rapoly_core::bounds::compute_tables;
use rapoly_core::{BoundsConfig, TableFormat};

fn cascade(c: &mut Criterion) {
    let config = BoundsConfig::default();
    c.bench_function("compute_tables/default", |b| {
        b.iter(|| compute_tables(black_box(&config)).unwrap())
    });
    let table = compute_tables(&config).unwrap();
    c.bench_function("render/json", |b| {
        b.iter(|| table.render(black_box(TableFormat::Json)))
    });
}

criterion_group!(benches, cascade);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hgcut_bench::sampled_instance;
use hgcut_core::asymptotics::{beta_star, growth_h, Degrees, RootSearch};
use hgcut_core::distribution::full_table;
use hgcut_core::encodability::{min_cutsize_bruteforce, DEFAULT_ASSIGNMENT_CAP};
use hgcut_core::oracle::{exact_ensemble_average, DEFAULT_VERTEX_CAP};
use hgcut_core::{EnsembleParams, Ratio};

fn exact_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_table");
    group.sample_size(10);
    for n in [20, 60, 120] {
        let p = EnsembleParams::new(n, 3, 6).unwrap();
        group.bench_function(format!("E({n},3,6)"), |b| b.iter(|| full_table(black_box(&p), 1000).unwrap()));
    }
    group.finish();
}

fn asymptotics(c: &mut Criterion) {
    let d = Degrees::new(3, 6).unwrap();
    c.bench_function("growth_h eps=0.1", |b| b.iter(|| growth_h(black_box(0.3), 0.1, d).unwrap()));
    c.bench_function("beta_star (3,6)", |b| {
        b.iter(|| beta_star(black_box(0.0), d, RootSearch::default()).unwrap())
    });
}

fn partitions(c: &mut Criterion) {
    let h = sampled_instance(32, 2, 4, 1);
    c.bench_function("min_cutsize_bruteforce m=16 K=2", |b| {
        b.iter(|| min_cutsize_bruteforce(black_box(&h), 2, Ratio::ZERO, DEFAULT_ASSIGNMENT_CAP).unwrap())
    });
    let mat = sampled_instance(600, 3, 6, 2).to_matrix();
    c.bench_function("gf2_rank 300x600", |b| b.iter(|| black_box(&mat).gf2_rank()));
}

fn oracle(c: &mut Criterion) {
    let p = EnsembleParams::new(4, 2, 4).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("exhaustive E(4,2,4)", |b| {
        b.iter(|| exact_ensemble_average(black_box(&p), 10, DEFAULT_VERTEX_CAP).unwrap())
    });
    group.finish();
}

criterion_group!(benches, exact_tables, asymptotics, partitions, oracle);
criterion_main!(benches);

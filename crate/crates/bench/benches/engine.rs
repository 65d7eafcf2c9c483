use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use upq_bench::{small_types, symmetric_interval};
use upq_core::oracle::required_degree_bound;
use upq_core::{brute_force_walls, enumerate_walls, regime_bounds, HitchinPairType, Rational, WallOptions};

fn walls(c: &mut Criterion) {
    let mut group = c.benchmark_group("walls");
    for (p, q) in [(1, 1), (3, 2), (6, 5)] {
        let t = HitchinPairType::new(p, q, 3, -2).unwrap();
        let (lo, hi) = symmetric_interval(6);
        group.bench_with_input(BenchmarkId::new("enumerate", format!("{p},{q}")), &t, |b, t| {
            b.iter(|| enumerate_walls(black_box(t), &lo, &hi, &WallOptions::default()).unwrap())
        });
        let bound = u64::try_from(required_degree_bound(&t, &lo, &hi)).unwrap();
        group.bench_with_input(BenchmarkId::new("brute_force", format!("{p},{q}")), &t, |b, t| {
            b.iter(|| brute_force_walls(black_box(t), &lo, &hi, bound).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let types = small_types();
    let (lo, hi) = symmetric_interval(6);
    c.bench_function("enumerate small-type sweep", |b| {
        b.iter(|| {
            types
                .iter()
                .map(|t| enumerate_walls(t, &lo, &hi, &WallOptions::default()).unwrap().len())
                .sum::<usize>()
        })
    });
}

fn bounds(c: &mut Criterion) {
    let alpha = Rational::new(-7, 3).unwrap();
    c.bench_function("regime bounds 8x8 grid", |b| {
        b.iter(|| {
            for p in 1..=8 {
                for q in 1..=8 {
                    black_box(regime_bounds(p, q, 4, &alpha).unwrap());
                }
            }
        })
    });
}

criterion_group!(benches, walls, sweep, bounds);
criterion_main!(benches);

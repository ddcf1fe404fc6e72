use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use csgk_core::algebra::mul_c;
use csgk_core::extensions::check_star_associativity;
use csgk_core::topology::check_tau_p_grid;
use csgk_core::{par, Region};

fn assoc_triples(elems: &[csgk_core::CanonC]) -> u64 {
    par::fold(
        elems,
        || 0u64,
        |bad, &x| {
            let mut bad = bad;
            for &y in elems {
                let xy = mul_c(x, y);
                for &z in elems {
                    bad += u64::from(mul_c(xy, z) != mul_c(x, mul_c(y, z)));
                }
            }
            bad
        },
        |a, b| a + b,
    )
}

fn pools() -> Vec<usize> {
    let n = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    vec![1, n]
}

fn scans(c: &mut Criterion) {
    let elems = Region::cube(4).elements();
    let mut g = c.benchmark_group("assoc-c-444");
    for workers in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || black_box(assoc_triples(&elems))))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("star-assoc-333");
    g.sample_size(10);
    for workers in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || black_box(check_star_associativity(Region::cube(3), 3))))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("tau-p-p2-a2");
    g.sample_size(10);
    for workers in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || black_box(check_tau_p_grid(Region::cube(3), &[2], 2..=2, 4))))
        });
    }
    g.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);

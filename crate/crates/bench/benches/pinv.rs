use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use resdist::{linalg, spectral, verify};
use resdist_bench::{balanced, cactus, class_c, reduced_laplacian};

fn bench_det(c: &mut Criterion) {
    let mut g = c.benchmark_group("det_reduced_laplacian");
    for n in [6, 10, 16] {
        let m = reduced_laplacian(&balanced(n, 7));
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| linalg::det(black_box(m)).unwrap())
        });
    }
    g.finish();
}

fn bench_pinv(c: &mut Criterion) {
    let mut g = c.benchmark_group("laplacian_pinv");
    for n in [6, 10, 16] {
        let d = balanced(n, 11);
        let lap = spectral::laplacian(&d);
        g.bench_with_input(BenchmarkId::new("rank_factorization", n), &lap, |b, l| {
            b.iter(|| linalg::pinv_general(black_box(l)))
        });
        g.bench_with_input(BenchmarkId::new("partitioned", n), &d, |b, d| {
            b.iter(|| spectral::pinv_balanced(black_box(d), d.n()).unwrap())
        });
    }
    g.finish();
}

fn bench_resistance(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_conjecture");
    g.sample_size(20);
    for blocks in [4, 8] {
        let d = cactus(blocks, 13);
        g.bench_with_input(BenchmarkId::new("cactus", d.n()), &d, |b, d| {
            b.iter(|| verify::check_conjecture(black_box(d)).unwrap())
        });
        let d = class_c(blocks, 17);
        g.bench_with_input(BenchmarkId::new("class_c", d.n()), &d, |b, d| {
            b.iter(|| verify::check_conjecture(black_box(d)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_det, bench_pinv, bench_resistance);
criterion_main!(benches);

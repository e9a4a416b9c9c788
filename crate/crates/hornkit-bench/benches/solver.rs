use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hornkit::counting::{holonomic_rank, persistent_dim};
use hornkit::polygon::{build_polygon, classify};
use hornkit::series::{harvest_polynomials, series_from_submatrix};
use hornkit::solver::{check_constructive, persistent_solutions};
use hornkit_bench::{simplex, triangle_sides, zonotope};

fn counting(c: &mut Criterion) {
    let t = triangle_sides();
    c.bench_function("rank_and_persistent_dim", |b| {
        b.iter(|| (holonomic_rank(black_box(&t)).unwrap(), persistent_dim(black_box(&t)).unwrap()))
    });
    c.bench_function("classify", |b| b.iter(|| classify(&build_polygon(black_box(&t)).unwrap())));
}

fn solving(c: &mut Criterion) {
    let z = zonotope();
    let t = triangle_sides();
    c.bench_function("persistent_solutions_zonotope", |b| b.iter(|| persistent_solutions(black_box(&z))));
    c.bench_function("harvest_triangle_sides", |b| b.iter(|| harvest_polynomials(black_box(&t), 24).unwrap()));
    let mut g = c.benchmark_group("constructive");
    g.sample_size(10);
    g.bench_function("zonotope", |b| b.iter(|| check_constructive(black_box(&z), 24).unwrap()));
    g.bench_function("triangle_sides", |b| b.iter(|| check_constructive(black_box(&t), 24).unwrap()));
    g.finish();
}

fn series(c: &mut Criterion) {
    let s = simplex();
    c.bench_function("series_simplex_window_12", |b| {
        b.iter(|| series_from_submatrix(black_box(&s), (0, 1), 0, 12).unwrap())
    });
}

criterion_group!(benches, counting, solving, series);
criterion_main!(benches);

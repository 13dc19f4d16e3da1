use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cancellation_lab::corpus::{book, grid, random_square_diagram, surface};
use cancellation_lab::diagram::search_minimal_diagram;
use cancellation_lab::quadric::{find_dlwc, quadrize};
use cancellation_lab::smallcancel::classify;
use cancellation_lab::SignedEdge;

fn classification(c: &mut Criterion) {
    let g = grid(8, 8);
    c.bench_function("classify grid 8x8", |b| b.iter(|| classify(black_box(&g))));
    let s = surface(4);
    c.bench_function("classify genus 4", |b| b.iter(|| classify(black_box(&s))));
}

fn quadrization(c: &mut Criterion) {
    let g = grid(8, 8);
    c.bench_function("quadrize grid 8x8", |b| b.iter(|| quadrize(black_box(&g))));
    let q = quadrize(&book(3, 3, 7));
    c.bench_function("find dlwc book 3,3,7", |b| b.iter(|| find_dlwc(black_box(q.y()), 4, 20_000)));
}

fn diagrams(c: &mut Criterion) {
    let ds: Vec<_> = (0..64).map(|s| random_square_diagram(30, s)).collect();
    c.bench_function("gauss-bonnet audit x64", |b| {
        b.iter(|| ds.iter().filter(|d| d.gauss_bonnet_audit().pass).count())
    });
    let g = grid(3, 2);
    let e = |n: &str, fwd| SignedEdge::new(g.edge_by_name(n).expect("edge"), fwd);
    let w = vec![
        e("h0_0", true),
        e("h1_0", true),
        e("v2_0", true),
        e("v2_1", true),
        e("h1_2", false),
        e("h0_2", false),
        e("v0_1", false),
        e("v0_0", false),
    ];
    c.bench_function("search 2x2 boundary", |b| b.iter(|| search_minimal_diagram(&g, black_box(&w), 6)));
}

criterion_group!(benches, classification, quadrization, diagrams);
criterion_main!(benches);

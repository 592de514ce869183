//! Benchmarks for the hot paths: characteristic sequences, window
//! enumeration, lattice reduction, inner degrees, and the torsion counting
//! formula.

use btforms_core::building::{reduce_to_weyl, standard_vertex, LatticeVertex};
use btforms_core::verify::deterministic_gamma;
use btforms_core::weyl::{characteristic_sequence, wk_window, WeylVertex};
use btforms_core::{inner_degree, log_e_si, make_context, rat, FormSpec, WeylPoint};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn bench_charseq(c: &mut Criterion) {
    let ctx = make_context(3, 4).unwrap();
    let n = WeylVertex::new(&ctx, vec![5, 3, 1, 0]).unwrap();
    let x = n.to_point();
    c.bench_function("charseq r=4 count=64", |b| {
        b.iter(|| characteristic_sequence(&ctx, black_box(x.as_apartment()), 64))
    });
}

fn bench_wk_window(c: &mut Criterion) {
    let ctx = make_context(2, 3).unwrap();
    c.bench_function("wk_window k=4 bound=12", |b| {
        b.iter(|| wk_window(&ctx, black_box(4), black_box(12)))
    });
}

fn bench_reduce(c: &mut Criterion) {
    let ctx = make_context(3, 3).unwrap();
    let n = WeylVertex::new(&ctx, vec![3, 1, 0]).unwrap();
    let gamma = deterministic_gamma(&ctx, 7);
    let moved = LatticeVertex::new(
        &ctx,
        standard_vertex(&ctx, &n)
            .basis()
            .mul(&ctx, &gamma.to_laurent()),
    )
    .unwrap();
    c.bench_function("reduce_to_weyl r=3 q=3", |b| {
        b.iter(|| reduce_to_weyl(&ctx, black_box(&moved)).unwrap())
    });
}

fn bench_inner_degree(c: &mut Criterion) {
    let ctx = make_context(3, 3).unwrap();
    let f = FormSpec::alpha(2).unwrap();
    let n = WeylVertex::new(&ctx, vec![1, 1, 0]).unwrap();
    c.bench_function("inner_degree alpha_2 at p, q=3", |b| {
        b.iter(|| inner_degree(&ctx, black_box(&f), &n).unwrap())
    });
}

fn bench_log_e_si(c: &mut Criterion) {
    let ctx = make_context(3, 3).unwrap();
    let x = WeylPoint::new(&ctx, vec![rat(6), rat(2), rat(0)]).unwrap();
    c.bench_function("log_e_si d=3 deep point", |b| {
        b.iter(|| log_e_si(&ctx, black_box(&x), 3, 2, 1).unwrap())
    });
}

criterion_group!(
    benches,
    bench_charseq,
    bench_wk_window,
    bench_reduce,
    bench_inner_degree,
    bench_log_e_si
);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mquwm::classify::extension_vectors;
use mquwm::*;

fn weight_distribution(c: &mut Criterion) {
    let code = load_code("C_{32,11,1}").unwrap();
    c.bench_function("weight_distribution [32,11]", |b| {
        b.iter(|| black_box(&code).weight_distribution().unwrap())
    });
}

fn covering_radius_bfs(c: &mut Criterion) {
    let mut g = c.benchmark_group("covering_radius");
    for id in ["C_{16,7,1}", "C_{32,11,1}", "C_{32,9,1}"] {
        let code = load_code(id).unwrap();
        g.bench_function(id, |b| b.iter(|| covering_radius(black_box(&code)).unwrap()));
    }
    g.finish();
}

fn canonical(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_form");
    for id in ["C_{16,8,1}", "C_{32,9,1}", "C_{32,10,102}"] {
        let code = load_code(id).unwrap();
        g.bench_function(id, |b| b.iter(|| canonical_form(black_box(&code)).unwrap()));
    }
    g.finish();
}

fn maximality(c: &mut Criterion) {
    let code = load_code("C_{32,10,1}").unwrap();
    let cert = certify(&code).unwrap();
    c.bench_function("is_maximal C_{32,10,1}", |b| b.iter(|| is_maximal(&code, &cert).unwrap()));
}

fn extensions(c: &mut Criterion) {
    let code = load_code("C_{16,6,1}").unwrap();
    c.bench_function("extension_vectors C_{16,6,1}", |b| {
        b.iter(|| extension_vectors(black_box(&code), 2).unwrap())
    });
}

fn quwm(c: &mut Criterion) {
    let code = load_code("C_{32,10,102}").unwrap();
    c.bench_function("build_quwm_set C_{32,10,102}", |b| b.iter(|| build_quwm_set(&code).unwrap()));
    let set = build_quwm_set(&code).unwrap();
    c.bench_function("verify 16 matrices of order 32", |b| b.iter(|| set.verify()));
}

criterion_group!(
    benches,
    weight_distribution,
    covering_radius_bfs,
    canonical,
    maximality,
    extensions,
    quwm
);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use nonorient::abelian::Abelianization;
use nonorient::catalog::{braid3, mod_n31_v, SubgroupSpec};
use nonorient::klein::k_out;
use nonorient::surface::{max_chain, max_disjoint_system};
use nonorient::verifier::{check_endomorphism, n31v_prover, phi};
use nonorient::{coset_enumerate, is_consequence, ChainConstraint};
use nonorient_bench::braid_center_word;

fn word_problem(c: &mut Criterion) {
    let p = braid3().presentation;
    let w = braid_center_word();
    c.bench_function("consequence/braid_center", |b| b.iter(|| is_consequence(black_box(&w), &p, 100_000).unwrap()));
    let v = mod_n31_v().presentation;
    c.bench_function("abelianize/n31v", |b| b.iter(|| Abelianization::of(black_box(&v)).invariants()));
}

fn cosets(c: &mut Criterion) {
    let l = SubgroupSpec::twist_subgroup_l();
    c.bench_function("cosets/L_in_n31v", |b| b.iter(|| coset_enumerate(black_box(&l), 10_000).unwrap()));
}

fn klein(c: &mut Criterion) {
    c.bench_function("klein/out_bound_3", |b| b.iter(|| k_out(black_box(3)).unwrap()));
}

fn surfaces(c: &mut Criterion) {
    c.bench_function("surface/max_chain_13", |b| {
        b.iter(|| max_chain(black_box(13), ChainConstraint::MustContainKleinBottlePiece).unwrap())
    });
    c.bench_function("surface/disjoint_system_12", |b| b.iter(|| max_disjoint_system(black_box(12)).unwrap()));
}

fn verifier(c: &mut Criterion) {
    let prover = n31v_prover().unwrap();
    let e = phi(1);
    let mut g = c.benchmark_group("verifier");
    g.sample_size(10);
    g.bench_function("phi1", |b| b.iter(|| check_endomorphism(black_box(&e), &prover, 100_000).unwrap()));
    g.finish();
}

criterion_group!(benches, word_problem, cosets, klein, surfaces, verifier);
criterion_main!(benches);

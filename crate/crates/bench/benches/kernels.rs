use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mirrorkit::ainfty::{coderivation_square, fixtures, stasheff_check};
use mirrorkit::fukaya_torus::{associativity_residual, m2_constants, theta_sum, ThetaSum};
use mirrorkit::hurwitz::{connected_counts, connected_series, covers_bruteforce, quasimodular_fit, Connectivity};
use mirrorkit::mirror_quintic::quintic_instantons;
use mirrorkit::picard_fuchs::{frobenius_family, quintic_operator};
use mirrorkit::quantum_p2::{counts_from_associativity, plane_curve_recursion};
use mirrorkit_bench::{four_lines, twisted_category};

fn quintic(c: &mut Criterion) {
    c.bench_function("frobenius_family order 20", |b| {
        b.iter(|| frobenius_family(&quintic_operator(), black_box(20)).unwrap())
    });
    c.bench_function("quintic_instantons dmax 10", |b| b.iter(|| quintic_instantons(black_box(10)).unwrap()));
}

fn plane_curves(c: &mut Criterion) {
    c.bench_function("plane_curve_recursion dmax 30", |b| b.iter(|| plane_curve_recursion(black_box(30))));
    c.bench_function("counts_from_associativity dmax 6", |b| {
        b.iter(|| counts_from_associativity(black_box(6)).unwrap())
    });
}

fn hurwitz(c: &mut Criterion) {
    c.bench_function("connected_counts b 4 dmax 20", |b| b.iter(|| connected_counts(black_box(4), black_box(20))));
    c.bench_function("covers_bruteforce d 5 b 2", |b| {
        b.iter(|| covers_bruteforce(black_box(5), 2, Connectivity::Connected, 1).unwrap())
    });
    let series = connected_series(3, 16).unwrap();
    c.bench_function("quasimodular_fit genus 3", |b| b.iter(|| quasimodular_fit(black_box(&series)).unwrap()));
}

fn ainfty(c: &mut Criterion) {
    let cat = fixtures::homotopy_associative().to_category().unwrap();
    c.bench_function("stasheff homotopy_associative", |b| b.iter(|| stasheff_check(black_box(&cat), 6)));
    c.bench_function("coderivation homotopy_associative", |b| b.iter(|| coderivation_square(black_box(&cat), 6)));
    let tw = twisted_category();
    let mut group = c.benchmark_group("twisted");
    group.sample_size(10);
    group.bench_function("stasheff arity 6", |b| b.iter(|| stasheff_check(black_box(&tw), 6)));
    group.finish();
}

fn fukaya(c: &mut Criterion) {
    c.bench_function("theta_sum small a", |b| b.iter(|| theta_sum(ThetaSum::new(black_box(0.05), 0.3), 1e-12)));
    c.bench_function("theta_sum large a", |b| b.iter(|| theta_sum(ThetaSum::new(black_box(4.0), 0.3), 1e-12)));
    let [l1, l2, l3, l4] = four_lines();
    c.bench_function("m2_constants", |b| b.iter(|| m2_constants(&l1, &l2, &l3, black_box(10.0), 1e-12).unwrap()));
    c.bench_function("associativity_residual", |b| {
        b.iter(|| associativity_residual([&l2, &l3, &l1, &l4], black_box(10.0), 1e-12).unwrap())
    });
}

criterion_group!(benches, quintic, plane_curves, hurwitz, ainfty, fukaya);
criterion_main!(benches);

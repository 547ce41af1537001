use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use specmult::spectra::{multiplicity_set_sample, torus_classify, torus_multiplicity, SampleRange};
use specmult::witness::{surjectivity_witness, theorem_q_witness, DEFAULT_PRIME_BOUND};
use specmult::{Form, TorusSpec};

fn witnesses(c: &mut Criterion) {
    c.bench_function("theorem_q_1_5_k3", |b| {
        b.iter(|| theorem_q_witness(1, 5, black_box(3), DEFAULT_PRIME_BOUND).unwrap())
    });
    let f = Form::new(1, 1, 6);
    c.bench_function("surjectivity_1_1_6_k6", |b| {
        b.iter(|| surjectivity_witness(&f, black_box(6), DEFAULT_PRIME_BOUND).unwrap())
    });
}

fn tori(c: &mut Criterion) {
    let rational = TorusSpec::parse("1/2", "3").unwrap();
    let irrational = TorusSpec::parse("sqrt(2)", "2+sqrt(2)").unwrap();
    c.bench_function("torus_classify_dependent", |b| {
        b.iter(|| torus_classify(black_box(&irrational)).unwrap())
    });
    c.bench_function("torus_multiplicity_irrational", |b| {
        b.iter(|| torus_multiplicity(&irrational, 3, black_box(0), 15).unwrap())
    });
    c.bench_function("sample_rational_levels_500", |b| {
        b.iter(|| multiplicity_set_sample(&rational, SampleRange::Levels(black_box(500))).unwrap())
    });
    let mut group = c.benchmark_group("sample_irrational");
    group.sample_size(10);
    group.bench_function("box_8", |b| {
        b.iter(|| multiplicity_set_sample(&irrational, SampleRange::Box(black_box(8))).unwrap())
    });
    group.finish();
}

criterion_group!(benches, witnesses, tori);
criterion_main!(benches);

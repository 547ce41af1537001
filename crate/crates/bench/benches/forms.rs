use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use specmult::qform::class_group;
use specmult::repcount::{count_r, representations};
use specmult::Form;
use specmult_bench::sample_forms;

fn reduction(c: &mut Criterion) {
    let forms = [
        Form::new(5, 13, 9),
        Form::new(1009, 2015, 1008),
        Form::new(123457, 98765, 19753),
    ];
    c.bench_function("reduce", |b| {
        b.iter(|| {
            for f in &forms {
                black_box(f.reduce().unwrap());
            }
        })
    });
}

fn class_groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("class_group");
    for delta in [-23i64, -503, -9999] {
        group.bench_with_input(BenchmarkId::from_parameter(delta), &delta, |b, &d| {
            b.iter(|| class_group(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn composition(c: &mut Criterion) {
    let forms = class_group(-9999).unwrap();
    c.bench_function("compose_all_pairs_-9999", |b| {
        b.iter(|| {
            for f in &forms {
                for g in &forms {
                    black_box(f.compose(g).unwrap());
                }
            }
        })
    });
}

fn counting(c: &mut Criterion) {
    let forms = sample_forms();
    c.bench_function("count_r_sample_forms_n<=2000", |b| {
        b.iter(|| {
            for f in &forms {
                for n in 1..=2000 {
                    black_box(count_r(f, n).unwrap());
                }
            }
        })
    });
    let f = Form::new(2, 1, 3);
    c.bench_function("representations_large_n", |b| {
        b.iter(|| representations(&f, black_box(1_000_000_007)).unwrap())
    });
}

criterion_group!(benches, reduction, class_groups, composition, counting);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kucera_core::birkhoff::{birkhoff_experiment, frequency_trace, gn_exceed_set};
use kucera_core::cantor::rational::rat;
use kucera_core::covers::Budgets;
use kucera_core::lambalgen::lambalgen_construct;
use kucera_core::{ClopenSet, ComputableReal, MeasureSpec, Point, ProductClopen, ProductCylinder, TransformSpec, Word};
use std::hint::black_box;

fn traces(c: &mut Criterion) {
    let u = ClopenSet::of(&["1"]);
    let mut g = c.benchmark_group("frequency_trace");
    let transforms = [
        TransformSpec::shift(),
        TransformSpec::odometer(),
        TransformSpec::rotation(ComputableReal::sqrt2_minus_1()),
    ];
    for t in &transforms {
        for n in [256usize, 4096] {
            g.bench_with_input(BenchmarkId::new(t.name().to_string(), n), &n, |b, &n| {
                b.iter(|| black_box(frequency_trace(t, &u, &Point::seeded(7), n).unwrap()))
            });
        }
    }
    g.finish();
    let points: Vec<Point> = (1..=16).map(Point::seeded).collect();
    c.bench_function("birkhoff_experiment/16x2^14", |b| {
        b.iter(|| black_box(birkhoff_experiment(&TransformSpec::shift(), &u, &points, 1 << 14, &MeasureSpec::Uniform).unwrap()))
    });
}

fn gn(c: &mut Criterion) {
    let b = Budgets::default();
    let u = ClopenSet::of(&["1"]);
    let mut g = c.benchmark_group("gn_exceed_set");
    for n_max in [8u64, 16, 32] {
        g.bench_with_input(BenchmarkId::from_parameter(n_max), &n_max, |bench, &n_max| {
            bench.iter(|| {
                black_box(gn_exceed_set(&TransformSpec::shift(), &u, &rat(3, 4), 4, n_max, &MeasureSpec::Uniform, &b).unwrap())
            })
        });
    }
    g.finish();
}

fn lambalgen(c: &mut Criterion) {
    let u = ProductClopen::new([
        ProductCylinder::new([(0, Word::from("0")), (1, Word::from("01"))]),
        ProductCylinder::new([(1, Word::from("11")), (2, Word::from("0"))]),
    ]);
    let pts = [Point::zeros(), Point::periodic("", "01"), Point::seeded(5)];
    c.bench_function("lambalgen_construct/3coords", |b| {
        b.iter(|| black_box(lambalgen_construct(&u, &pts, &TransformSpec::odometer(), 64).unwrap()))
    });
}

criterion_group!(benches, traces, gn, lambalgen);
criterion_main!(benches);

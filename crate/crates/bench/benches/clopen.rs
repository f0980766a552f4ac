use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kucera_bench::scattered_set;
use kucera_core::transforms::{iterate_preimage, preimage_clopen};
use kucera_core::{ClopenSet, MeasureSpec, TransformSpec, Word};
use std::hint::black_box;

fn boolean_ops(c: &mut Criterion) {
    let mut g = c.benchmark_group("boolean");
    for depth in [8usize, 16, 32] {
        let a = scattered_set(depth, 200, 1);
        let b = scattered_set(depth, 200, 2);
        g.bench_with_input(BenchmarkId::new("union", depth), &depth, |bench, _| {
            bench.iter(|| black_box(a.union(&b)))
        });
        g.bench_with_input(BenchmarkId::new("intersect", depth), &depth, |bench, _| {
            bench.iter(|| black_box(a.intersect(&b)))
        });
    }
    g.finish();
}

fn measures(c: &mut Criterion) {
    let a = scattered_set(24, 500, 3);
    let bern = MeasureSpec::bernoulli(kucera_core::cantor::rational::rat(1, 3)).unwrap();
    c.bench_function("measure/uniform", |b| b.iter(|| black_box(a.uniform_measure())));
    c.bench_function("measure/bernoulli", |b| b.iter(|| black_box(a.measure(&bern))));
}

fn preimages(c: &mut Criterion) {
    let s = ClopenSet::of(&["0110", "10"]);
    let mut g = c.benchmark_group("preimage");
    for t in [TransformSpec::shift(), TransformSpec::odometer(), TransformSpec::bidirectional_shift(3)] {
        g.bench_function(t.name().to_string(), |b| b.iter(|| black_box(preimage_clopen(&t, &s).unwrap())));
    }
    let shift = TransformSpec::shift();
    for i in [16usize, 64, 256] {
        g.bench_with_input(BenchmarkId::new("shift_iterate", i), &i, |b, &i| {
            b.iter(|| black_box(iterate_preimage(&shift, &s, i).unwrap()))
        });
    }
    g.finish();
    c.bench_function("section_meet/depth16", |b| {
        let a = scattered_set(16, 3000, 4);
        b.iter(|| black_box(a.section_meet(4)))
    });
    c.bench_function("cylinder/depth64", |b| {
        let w = Word::from_index(0x5555, 64);
        b.iter(|| black_box(ClopenSet::cylinder(&w)))
    });
}

criterion_group!(benches, boolean_ops, measures, preimages);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use wonderful::arrangements::{classify, maximal_building, regular};
use wonderful::formulas::*;
use wonderful::oracle::poincare_oracle;
use wonderful::series::{self, DReading};
use wonderful::Kind;

fn formulas(c: &mut Criterion) {
    let mut g = c.benchmark_group("formulas");
    g.bench_function("max A n=12 closed", |b| b.iter(|| poincare_max_a_closed(black_box(12))));
    // memoized after the first call, so this measures the cached path
    g.bench_function("max A n=12 inductive", |b| b.iter(|| poincare_max_a_inductive(black_box(12))));
    g.bench_function("regular A n=7 s=5", |b| b.iter(|| poincare_regular_a(black_box(7), 5)));
    g.bench_function("tilde B n=8 s=3 closed", |b| b.iter(|| poincare_tilde_b_closed(black_box(8), 3)));
    g.bench_function("regular D n=6 s=2", |b| b.iter(|| poincare_regular_d(black_box(6), 2, DReading::Derived)));
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    let a5 = maximal_building(Kind::A, 5).unwrap();
    let b4 = regular(Kind::B, 4, 1).unwrap();
    let d4 = maximal_building(Kind::D, 4).unwrap();
    g.bench_function("max A n=5", |b| b.iter(|| poincare_oracle(black_box(&a5))));
    g.bench_function("G_1 B n=4", |b| b.iter(|| poincare_oracle(black_box(&b4))));
    g.bench_function("max D n=4", |b| b.iter(|| poincare_oracle(black_box(&d4))));
    g.finish();
}

fn series_and_classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("misc");
    g.sample_size(10);
    g.bench_function("b series order 12", |b| b.iter(|| series::b_series(black_box(12))));
    g.bench_function("classify B n=4", |b| b.iter(|| classify(Kind::B, black_box(4))));
    g.finish();
}

criterion_group!(benches, formulas, oracle, series_and_classification);
criterion_main!(benches);

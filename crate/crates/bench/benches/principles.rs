use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nearly::functions::{RampSpike, XOverN};
use nearly::interval::{int, rat, IntervalSet};
use nearly::oracle::{verify, Inputs, VerifyOptions};
use nearly::principles::{
    dini_index, egoroff_classical, egoroff_dini, fourth_principle, lusin, lusin_classical, principle1_decompose,
    DiniAlgorithm, DEFAULT_CAP,
};
use nearly_bench::{comb, decay, reciprocal, spike, staircase, unit};

fn sets(c: &mut Criterion) {
    let mut g = c.benchmark_group("interval_set");
    for n in [10, 100, 1000] {
        let (a, b) = (comb(n, 0), comb(n, 1));
        g.bench_with_input(BenchmarkId::new("union", n), &n, |bch, _| bch.iter(|| black_box(a.union(&b).unwrap())));
        g.bench_with_input(BenchmarkId::new("intersect", n), &n, |bch, _| {
            bch.iter(|| black_box(a.intersect(&b).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("decompose", n), &n, |bch, _| {
            bch.iter(|| black_box(principle1_decompose(&a, &rat(1, 1000)).unwrap()))
        });
    }
    g.finish();
}

fn bounded_and_continuous(c: &mut Criterion) {
    let mut g = c.benchmark_group("lusin");
    g.sample_size(10);
    let f = reciprocal();
    g.bench_function("fourth_principle 1/x", |b| b.iter(|| fourth_principle(&f, &rat(1, 1000), DEFAULT_CAP).unwrap()));
    for acc in [4, 6] {
        g.bench_with_input(BenchmarkId::new("alternative 1/x", acc), &acc, |b, &acc| {
            b.iter(|| lusin(&f, &rat(1, 10), acc, DEFAULT_CAP).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("classical 1/x", acc), &acc, |b, &acc| {
            b.iter(|| lusin_classical(&f, &rat(1, 10), acc, DEFAULT_CAP).unwrap())
        });
    }
    let s = staircase(64);
    g.bench_function("alternative staircase", |b| b.iter(|| lusin(&s, &rat(1, 100), 6, DEFAULT_CAP).unwrap()));
    g.finish();
}

fn uniform(c: &mut Criterion) {
    let mut g = c.benchmark_group("egoroff");
    g.sample_size(10);
    for (name, seq) in [("spike", spike()), ("decay", decay())] {
        for ladder in [4u64, 6] {
            let id = format!("{name}/{ladder}");
            g.bench_function(BenchmarkId::new("classical", &id), |b| {
                b.iter(|| egoroff_classical(&seq, &rat(1, 100), ladder, DEFAULT_CAP).unwrap())
            });
            g.bench_function(BenchmarkId::new("dini", &id), |b| {
                b.iter(|| egoroff_dini(&seq, &rat(1, 100), ladder, DEFAULT_CAP).unwrap())
            });
        }
    }
    let seq = spike();
    let cert = egoroff_classical(&seq, &rat(1, 10), 4, DEFAULT_CAP).unwrap().into();
    let inputs = Inputs::Sequence(seq);
    g.bench_function("verify spike/4", |b| b.iter(|| verify(&cert, &inputs, &VerifyOptions::default()).unwrap()));
    g.finish();
}

fn dini(c: &mut Criterion) {
    let mut g = c.benchmark_group("dini");
    let x = XOverN::new(int(0), int(1), unit()).unwrap();
    let s = RampSpike::new(int(0), int(1), unit()).unwrap();
    let k = IntervalSet::parse("[0,9/10]", unit()).unwrap();
    for alg in [DiniAlgorithm::Sup, DiniAlgorithm::Cover] {
        let name = format!("{alg:?}").to_lowercase();
        g.bench_function(BenchmarkId::new("x_over_n", &name), |b| {
            b.iter(|| dini_index(&x, &x.limit(), &IntervalSet::full(unit()), &rat(1, 1000), alg, DEFAULT_CAP).unwrap())
        });
        g.bench_function(BenchmarkId::new("ramp_spike", &name), |b| {
            b.iter(|| dini_index(&s, &s.limit(), &k, &rat(1, 1000), alg, DEFAULT_CAP).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sets, bounded_and_continuous, uniform, dini);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kostant::cascade::kostant_cascade;
use kostant::liealg::chevalley_constants;
use kostant::par::Mode;
use kostant::polyalg::{PoissonContext, RationalFunction};
use kostant::reduction::{brute_force_invariants, invariant_set, verify_ad_invariance, Generators};
use kostant::rootsys::RootSystem;
use kostant::weight_table::KTable;

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn setup(s: &str) -> (RootSystem, PoissonContext) {
    let rs = RootSystem::new(s.parse().unwrap()).unwrap();
    let sc = chevalley_constants(&rs).unwrap();
    (rs, PoissonContext::nilpotent(&sc))
}

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("invariant_set");
    g.sample_size(10);
    for s in ["C4", "D5", "F4"] {
        let (rs, ctx) = setup(s);
        let cas = kostant_cascade(&rs);
        let kt = KTable::build(&rs, &cas).unwrap();
        for (name, mode) in MODES {
            g.bench_with_input(BenchmarkId::new(name, s), &mode, |b, &mode| {
                b.iter(|| invariant_set(black_box(&rs), &ctx, &cas, &kt, mode).unwrap())
            });
        }
    }
    g.finish();
}

fn invariance(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_ad_invariance");
    let (rs, ctx) = setup("F4");
    let cas = kostant_cascade(&rs);
    let kt = KTable::build(&rs, &cas).unwrap();
    let inv = invariant_set(&rs, &ctx, &cas, &kt, Mode::Parallel).unwrap();
    let big = inv.qs.iter().max_by_key(|p| p.len()).unwrap();
    let q = RationalFunction::from_poly(big.clone());
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, "F4 largest Q"), |b| {
            b.iter(|| verify_ad_invariance(black_box(&q), &ctx, Generators::AllPositive, mode).unwrap())
        });
    }
    g.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute_force_invariants");
    g.sample_size(10);
    let (_, ctx) = setup("B3");
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, "B3 d=5"), |b| {
            b.iter(|| brute_force_invariants(black_box(&ctx), 5, mode).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, reduction, invariance, brute_force);
criterion_main!(benches);

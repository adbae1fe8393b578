use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use superweights::algebra::SuperAlgebra;
use superweights::arith::Cyclotomic;
use superweights::combinatorics::{closed_subsets, functional_for_shadow, shadow_from_inj};
use superweights::modules::{finite_simple_module, simplicity_check};
use superweights::par::{map_in, Exec};
use superweights::roots::{build_root_system, Family};

fn shadows(c: &mut Criterion) {
    let rs = build_root_system(&Family::B { m: 1, n: 1 }).unwrap();
    let subsets = closed_subsets(&rs);
    let mut group = c.benchmark_group("shadow_functionals");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| {
                map_in(exec, &subsets, |inj| {
                    let s = shadow_from_inj(&rs, inj).unwrap();
                    black_box(functional_for_shadow(&rs, &s).unwrap())
                })
            })
        });
    }
    group.finish();
}

fn simplicity(c: &mut Criterion) {
    let sl21 = SuperAlgebra::by_id("sl21").unwrap();
    let modules: Vec<_> = (0..4i64)
        .flat_map(|a| (1..4i64).map(move |b| (a, b)))
        .map(|(a, b)| finite_simple_module(&sl21, &vec![Cyclotomic::integer(a), Cyclotomic::integer(b)]).unwrap())
        .collect();
    let mut group = c.benchmark_group("simplicity_batch");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| map_in(exec, &modules, |m| black_box(simplicity_check(m))))
        });
    }
    group.finish();
}

criterion_group!(benches, shadows, simplicity);
criterion_main!(benches);

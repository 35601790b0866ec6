use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use padic_ode::apps::{bench_isogeny, BenchConfig};
use padic_ode::dsol::harness::{check_perturbation_equivalence, oracle_equivalence_suite, random_solution, rhs_for_solution, trial_rng, OracleCase};
use padic_ode::dsol::plan;
use padic_ode::{Exec, PadicContext, RhsSpec};

fn modes() -> Vec<Exec> {
    if Exec::available() {
        vec![Exec::Sequential, Exec::Parallel]
    } else {
        vec![Exec::Sequential]
    }
}

fn oracle_suite(c: &mut Criterion) {
    let h = RhsSpec::rational_i64(&[1], &[1, -1]).unwrap();
    let cases: Vec<OracleCase> = (0..64)
        .map(|i| OracleCase { p: [3, 5, 7, 11][i % 4], lambda: 8, n: 128, h: h.clone(), seed: i as u64 })
        .collect();
    let mut group = c.benchmark_group("oracle_suite_64x128");
    group.sample_size(10);
    for exec in modes() {
        group.bench_function(BenchmarkId::from_parameter(format!("{exec:?}")), |b| {
            b.iter(|| black_box(oracle_equivalence_suite(&cases, exec)))
        });
    }
    group.finish();
}

fn perturbation(c: &mut Criterion) {
    let h = RhsSpec::polynomial_i64(&[1, 2, 1]).unwrap();
    let n = 100;
    let pl = plan(2, n as u64, 5).unwrap();
    let ctx = PadicContext::new(5, pl.lambda).unwrap();
    let y = random_solution(&ctx, n + 1, &mut trial_rng(1, 0));
    let g = rhs_for_solution(&y, &h).unwrap();
    let mut group = c.benchmark_group("perturbation_100_trials");
    group.sample_size(10);
    for exec in modes() {
        group.bench_function(BenchmarkId::from_parameter(format!("{exec:?}")), |b| {
            b.iter(|| black_box(check_perturbation_equivalence(&g, &h, 2, 100, n, 3, exec).unwrap()))
        });
    }
    group.finish();
}

fn isogeny_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("isogeny_sweep");
    group.sample_size(10);
    for exec in modes() {
        let config = BenchConfig { m_list: vec![1, 2, 11, 101, 1001], exec, ..BenchConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(format!("{exec:?}")), |b| {
            b.iter(|| black_box(bench_isogeny(&config).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, oracle_suite, perturbation, isogeny_sweep);
criterion_main!(benches);

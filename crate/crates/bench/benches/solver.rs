use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symdesign_bench::solver_fixtures;
use symdesign_core::{kernel_lattice, lower_bound, tmax_exact, SolveOptions};

fn solve(c: &mut Criterion) {
    let opts = SolveOptions { assume_semiuniversal: true, max_sectors: None };
    let mut g = c.benchmark_group("tmax_exact");
    g.sample_size(10);
    for f in solver_fixtures() {
        g.bench_with_input(BenchmarkId::from_parameter(&f.name), &f, |b, f| {
            b.iter(|| tmax_exact(&f.a, &f.table, &opts).unwrap())
        });
    }
    g.finish();
}

fn kernel(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernel_lattice");
    for f in solver_fixtures() {
        g.bench_with_input(BenchmarkId::from_parameter(&f.name), &f, |b, f| b.iter(|| kernel_lattice(&f.a.entries)));
    }
    g.finish();
}

fn bound(c: &mut Criterion) {
    let mut g = c.benchmark_group("lower_bound");
    for f in solver_fixtures() {
        g.bench_with_input(BenchmarkId::from_parameter(&f.name), &f, |b, f| b.iter(|| lower_bound(&f.a, &f.table)));
    }
    g.finish();
}

criterion_group!(benches, solve, kernel, bound);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use covpath_bench::points;
use covpath_core::{solve, GenKind, SolveOptions};

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (label, kind) in [("uniform", GenKind::UniformSquare), ("grid", GenKind::Grid), ("collinear", GenKind::CollinearHeavy)] {
        for n in [1_000usize, 10_000, 100_000] {
            let ps = points(kind, n, 7);
            group.throughput(Throughput::Elements(n as u64));
            group.bench_with_input(BenchmarkId::new(label, n), &ps, |b, ps| {
                b.iter(|| solve(ps, &SolveOptions::default()).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, scan);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hfskit_core::batch::{disagreement, evaluate_flat_batch, evaluate_hfs_batch, grid_points, Execution};
use hfskit_core::cprs::CaseStudyBundle;

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn bench_batches(c: &mut Criterion) {
    let bundle = CaseStudyBundle::bundled();
    let vars: Vec<_> = bundle.flat.inputs().iter().collect();
    // 3^5 and 6^5 grid points
    for step in [5.0, 2.0] {
        let points = grid_points(&vars, step);
        let mut group = c.benchmark_group(format!("cprs_grid_{}", points.len()));
        group.sample_size(20);
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new("flat", name), &points, |b, p| {
                b.iter(|| evaluate_flat_batch(&bundle.flat, p, exec))
            });
            group.bench_with_input(BenchmarkId::new("hfs", name), &points, |b, p| {
                b.iter(|| evaluate_hfs_batch(&bundle.hfs, p, exec))
            });
            group.bench_with_input(BenchmarkId::new("disagreement", name), &points, |b, p| {
                b.iter(|| disagreement(&bundle.flat, &bundle.hfs, p, exec))
            });
        }
        group.finish();
    }
}

criterion_group!(benches, bench_batches);
criterion_main!(benches);

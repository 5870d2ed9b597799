use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use gce_core::{
    estimate, gmems, least_entangled, standard_form_from_purities, validate_bounds, PurityPoint, SampleConfig,
};

criterion_group!(benches, bench_closed_forms, bench_matrix_pipeline, bench_validation);
criterion_main!(benches);

fn bench_closed_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_forms");
    group.bench_function("estimate", |b| b.iter(|| estimate(black_box(0.5), black_box(0.5), black_box(0.6))));
    group.bench_function("gmems", |b| b.iter(|| gmems(black_box(0.5), black_box(0.4), black_box(0.6))));
    group.bench_function("least_entangled", |b| {
        b.iter(|| least_entangled(black_box(0.5), black_box(0.4), black_box(0.6)))
    });
    let p = PurityPoint::new(0.5, 0.5, 0.6).with_delta(0.9);
    group.bench_function("inversion", |b| b.iter(|| standard_form_from_purities(black_box(&p))));
    group.finish();
}

fn bench_matrix_pipeline(c: &mut Criterion) {
    let cm = gmems(0.5, 0.4, 0.6).unwrap().to_covariance();
    let mut group = c.benchmark_group("matrix");
    group.bench_function("check_physical", |b| b.iter(|| black_box(&cm).check_physical()));
    group.bench_function("invariants", |b| b.iter(|| black_box(&cm).invariants()));
    group.bench_function("ppt_smallest_eigenvalue", |b| b.iter(|| black_box(&cm).ppt_smallest_eigenvalue()));
    group.bench_function("to_standard_form", |b| b.iter(|| black_box(&cm).to_standard_form()));
    group.finish();
}

fn bench_validation(c: &mut Criterion) {
    let cfg = SampleConfig { count: 10_000, ..SampleConfig::default() };
    let mut group = c.benchmark_group("validation");
    group.throughput(Throughput::Elements(cfg.count as u64));
    group.sample_size(20);
    group.bench_function("validate_bounds", |b| b.iter(|| validate_bounds(black_box(&cfg))));
    group.finish();
}

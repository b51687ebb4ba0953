use criterion::{criterion_group, criterion_main, Criterion};
use veldkamp_core::classify::{all_profiles, burnside_count, enumerate_orbits, fix_table, Action};
use veldkamp_core::report::{Classification, ExpectedFixture};
use veldkamp_core::veldkamp::enumerate_veldkamp_lines;
use veldkamp_core::{Context, HyperplaneSpace};

fn pipeline(c: &mut Criterion) {
    let ctx = Context::build();
    let fixture = ExpectedFixture::embedded().unwrap();

    c.bench_function("hyperplane_space", |b| b.iter(HyperplaneSpace::build));
    c.bench_function("veldkamp_lines", |b| b.iter(enumerate_veldkamp_lines));

    let mut slow = c.benchmark_group("classification");
    slow.sample_size(10);
    slow.bench_function("context", |b| b.iter(Context::build));
    slow.bench_function("fix_table", |b| b.iter(|| fix_table(&ctx)));
    slow.bench_function("burnside_lines", |b| b.iter(|| burnside_count(&ctx, Action::NhLines)));
    slow.bench_function("orbits", |b| b.iter(|| enumerate_orbits(&ctx)));
    slow.bench_function("profiles", |b| b.iter(|| all_profiles(&ctx)));
    slow.bench_function("row_assignment", |b| b.iter(|| Classification::run(&ctx, &fixture)));
    slow.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, Criterion};
use quadperm::{
    cylinder_decomposition, enumerate_stratum, separatrix_spectrum, singularity_pattern, EnumerateOptions,
    SingularityPattern, SymmetryGroup,
};
use quadperm_bench::{representatives, twelve_one};

fn canonical_forms(c: &mut Criterion) {
    let reps = representatives();
    c.bench_function("canonical_form/representatives", |b| {
        b.iter(|| reps.iter().map(|gp| gp.canonical_form(SymmetryGroup::default())).count())
    });
    c.bench_function("singularity_pattern/representatives", |b| {
        b.iter(|| reps.iter().map(singularity_pattern).count())
    });
}

fn geometry(c: &mut Criterion) {
    let (gp, lambda) = twelve_one();
    c.bench_function("separatrix_spectrum/Q12", |b| b.iter(|| separatrix_spectrum(&gp, &lambda).unwrap()));
    c.bench_function("cylinder_decomposition/Q12", |b| b.iter(|| cylinder_decomposition(&gp, &lambda).unwrap()));
    let cover = quadperm::build_cover(&gp, &lambda).unwrap();
    c.bench_function("sl2z_orbit/Q12", |b| b.iter(|| cover.sl2z_orbit(100_000).len()));
}

fn enumeration(c: &mut Criterion) {
    let pattern: SingularityPattern = "8".parse().unwrap();
    let mut group = c.benchmark_group("enumerate_stratum");
    group.sample_size(10);
    group.bench_function("Q8", |b| b.iter(|| enumerate_stratum(&pattern, &EnumerateOptions::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, canonical_forms, geometry, enumeration);
criterion_main!(benches);

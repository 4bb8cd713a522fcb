use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_complex::Complex64;

use dunkl_spectral::{
    mittag_leffler, solve_forward_spectral, solve_isp, MLParams, PhysicalFunction, PhysicalGrid,
    ProblemParams, SpectralEvolution, SpectralFunction, SpectralGrid, TimeGrid, TransformPlan,
};

fn bench_mittag_leffler(c: &mut Criterion) {
    let mut group = c.benchmark_group("mittag_leffler");
    for &(gamma, z) in &[(0.5, -0.5), (0.5, -20.0), (0.9, -80.0)] {
        let params = MLParams::new(gamma, 1.0).unwrap();
        group.bench_function(format!("gamma={gamma}_z={z}"), |b| {
            b.iter(|| mittag_leffler(std::hint::black_box(params), std::hint::black_box(z)))
        });
    }
    group.finish();
}

fn bench_transform(c: &mut Criterion) {
    let alpha = 0.5;
    let pgrid = PhysicalGrid::gauss_legendre(alpha, 12.0, 96).unwrap();
    let sgrid = SpectralGrid::gauss_legendre(alpha, 12.0, 96).unwrap();
    let plan = TransformPlan::new(alpha, &pgrid, &sgrid).unwrap();
    let f = PhysicalFunction::from_real_fn(&pgrid, |x| (-x * x).exp());

    let mut group = c.benchmark_group("transform");
    group.bench_function("plan_build_192x192", |b| {
        b.iter(|| TransformPlan::new(alpha, &pgrid, &sgrid))
    });
    group.bench_function("forward_192", |b| b.iter(|| plan.forward(&f)));
    group.finish();
}

fn bench_forward_solve(c: &mut Criterion) {
    let params = ProblemParams::new(0.0, 1.0, 1.0, 0.5, 1.0).unwrap();
    let sgrid = SpectralGrid::gauss_legendre(0.0, 8.0, 48).unwrap();
    let tgrid = TimeGrid::uniform(1.0, 64).unwrap();
    let ghat = SpectralFunction::from_fn(&sgrid, |l| Complex64::new((-l * l / 2.0).exp(), 0.0));
    let fhat = SpectralFunction::from_fn(&sgrid, |l| Complex64::new((-l * l / 4.0).exp(), 0.0));
    let fhat_t = SpectralEvolution::constant(&tgrid, &fhat);

    c.bench_function("forward_spectral_96x65", |b| {
        b.iter(|| solve_forward_spectral(&params, &ghat, &fhat_t, &tgrid))
    });
}

fn bench_inverse_solve(c: &mut Criterion) {
    let params = ProblemParams::new(-0.5, 1.0, 1.0, 1.0, 1.0).unwrap();
    let pgrid = PhysicalGrid::gauss_legendre(-0.5, 12.0, 96).unwrap();
    let sgrid = SpectralGrid::gauss_legendre(-0.5, 12.0, 96).unwrap();
    let plan = TransformPlan::new(-0.5, &pgrid, &sgrid).unwrap();
    let tgrid = TimeGrid::uniform(1.0, 64).unwrap();
    let phi = PhysicalFunction::zero(&pgrid);
    let psi = PhysicalFunction::from_real_fn(&pgrid, |x| (-x * x).exp());

    c.bench_function("solve_isp_sample_case", |b| {
        b.iter_batched(
            || (phi.clone(), psi.clone()),
            |(phi, psi)| solve_isp(&params, &phi, &psi, &plan, &tgrid),
            BatchSize::LargeInput,
        )
    });
}

criterion_group!(
    benches,
    bench_mittag_leffler,
    bench_transform,
    bench_forward_solve,
    bench_inverse_solve
);
criterion_main!(benches);

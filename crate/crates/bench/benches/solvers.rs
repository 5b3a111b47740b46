use criterion::{black_box, criterion_group, criterion_main, Criterion};
use laplext::kernels::OscillatorParam;
use laplext::solvers::{solve, solve_grid, InitialData, Problem, SolveRequest};
use laplext::QuadratureConfig;

fn single_points(c: &mut Criterion) {
    let a = OscillatorParam::new(1.0).unwrap();
    let cfg = QuadratureConfig::default();
    let gaussian = InitialData::Gaussian { center: 0.0, width: 1.0 };
    c.bench_function("solve_dirac_gaussian", |b| {
        b.iter(|| solve(&Problem::Dirac, &gaussian, black_box(0.5), black_box(0.2), &cfg))
    });
    c.bench_function("solve_euler_power", |b| {
        let data = InitialData::Power { exponent: 0.5 };
        b.iter(|| solve(&Problem::Euler(a), &data, black_box(0.5), black_box(1.2), &cfg))
    });
    let mut group = c.benchmark_group("oscillator");
    group.sample_size(20);
    group.bench_function("solve_oscillator_gaussian", |b| {
        b.iter(|| solve(&Problem::Oscillator(a), &gaussian, black_box(0.5), black_box(0.2), &cfg))
    });
    group.finish();
}

fn grid(c: &mut Criterion) {
    let req = SolveRequest {
        problem: Problem::Dirac,
        y_levels: vec![0.1, 0.2, 0.5, 1.0],
        spatial_points: (0..16).map(|i| -2.0 + 0.25 * i as f64).collect(),
        data: InitialData::Bump { center: 0.0, radius: 1.0 },
        cfg: QuadratureConfig::default(),
    };
    let mut group = c.benchmark_group("grid");
    group.sample_size(10);
    group.bench_function("solve_grid_dirac_4x16", |b| b.iter(|| solve_grid(black_box(&req))));
    group.finish();
}

criterion_group!(benches, single_points, grid);
criterion_main!(benches);

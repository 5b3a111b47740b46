use criterion::{black_box, criterion_group, criterion_main, Criterion};
use laplext::kernels::{mehler_heat_kernel, oscillator_poisson_kernel, EvaluationPoint, OscillatorParam};
use laplext::oracles::{spectral_heat_kernel, spectral_poisson_kernel, SpectralConfig};
use laplext::quadrature::subordination_derived_residual;
use laplext::QuadratureConfig;

fn kernels(c: &mut Criterion) {
    let a = OscillatorParam::new(1.0).unwrap();
    let cfg = QuadratureConfig::default();
    let p = EvaluationPoint::new(1.0, 0.3, -0.2).unwrap();
    c.bench_function("mehler_heat_kernel", |b| {
        b.iter(|| mehler_heat_kernel(black_box(0.5), black_box(0.3), black_box(-0.2), a))
    });
    c.bench_function("oscillator_poisson_kernel", |b| {
        b.iter(|| oscillator_poisson_kernel(black_box(&p), a, &cfg))
    });
    c.bench_function("subordination_derived_residual", |b| {
        b.iter(|| subordination_derived_residual(black_box(1.0), black_box(2.0), &cfg))
    });
}

fn spectral(c: &mut Criterion) {
    let a = OscillatorParam::new(1.0).unwrap();
    let heat = SpectralConfig::for_heat(0.5, a, 1e-16).unwrap();
    let poisson = SpectralConfig::for_poisson(1.0, a, 1e-13).unwrap();
    c.bench_function("spectral_heat_kernel", |b| {
        b.iter(|| spectral_heat_kernel(black_box(0.5), black_box(0.3), black_box(-0.2), &heat))
    });
    c.bench_function("spectral_poisson_kernel", |b| {
        b.iter(|| spectral_poisson_kernel(black_box(1.0), black_box(0.3), black_box(-0.2), &poisson))
    });
}

criterion_group!(benches, kernels, spectral);
criterion_main!(benches);

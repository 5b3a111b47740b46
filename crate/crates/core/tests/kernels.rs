use std::f64::consts::{E, PI, SQRT_2};

use approx::assert_relative_eq;
use laplext::kernels::{
    dirac_kernel, euler_kernel, halfplane_poisson_kernel, mehler_heat_kernel, oscillator_poisson_kernel,
    oscillator_poisson_kernel_with, EvaluationPoint, OscillatorParam, Prefactor,
};
use laplext::{Error, QuadratureConfig};
use proptest::prelude::*;

fn a(v: f64) -> OscillatorParam {
    OscillatorParam::new(v).unwrap()
}

fn pt(y: f64, x: f64, xp: f64) -> EvaluationPoint {
    EvaluationPoint::new(y, x, xp).unwrap()
}

#[test]
fn reference_values() {
    let cfg = QuadratureConfig::default();
    let k = oscillator_poisson_kernel(&pt(1.0, 0.0, 0.0), a(1.0), &cfg).unwrap();
    assert!(k.converged);
    assert_relative_eq!(k.value, 0.259_553_271_994_330_76, max_relative = 1e-10);
    let m = mehler_heat_kernel(0.5, 0.0, 0.0, a(1.0)).unwrap().value;
    assert_relative_eq!(m, 0.368_005_198_707_560_8, max_relative = 1e-14);
    let e = euler_kernel(&pt(1.0, 1.0, 1.0 / E), a(1.0)).unwrap().value;
    assert_relative_eq!(e, 0.657_744_623_479_457, max_relative = 1e-14);
    assert_relative_eq!(halfplane_poisson_kernel(&pt(1.0, 0.0, 0.0)).value, 1.0 / PI, max_relative = 1e-15);
}

#[test]
fn dirac_kernel_is_one_sided() {
    assert_eq!(dirac_kernel(&pt(1.0, 0.5, 0.5)).value, 0.0);
    assert_eq!(dirac_kernel(&pt(1.0, 0.5, -1.0)).value, 0.0);
    // y/(2√π) s^{-3/2} e^{-y²/(4s)} at y = s = 1
    let want = (-0.25f64).exp() / (2.0 * PI.sqrt());
    assert_relative_eq!(dirac_kernel(&pt(1.0, 0.0, 1.0)).value, want, max_relative = 1e-14);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(EvaluationPoint::new(0.0, 0.0, 0.0), Err(Error::InvalidArgument(_))));
    assert!(EvaluationPoint::new(-1.0, 0.0, 0.0).is_err());
    assert!(EvaluationPoint::new(1.0, f64::NAN, 0.0).is_err());
    assert!(OscillatorParam::new(0.0).is_err());
    assert!(OscillatorParam::new(f64::INFINITY).is_err());
    assert!(matches!(
        euler_kernel(&pt(1.0, 0.0, 0.5), a(1.0)),
        Err(Error::DegenerateCharacteristic { .. })
    ));
}

#[test]
fn printed_prefactor_is_sqrt_two_larger() {
    let cfg = QuadratureConfig::default();
    let p = pt(0.7, 0.2, -0.4);
    let c = oscillator_poisson_kernel_with(&p, a(1.5), &cfg, Prefactor::Corrected).unwrap().value;
    let w = oscillator_poisson_kernel_with(&p, a(1.5), &cfg, Prefactor::AsPrinted).unwrap().value;
    assert_relative_eq!(w / c, SQRT_2, max_relative = 1e-13);
}

#[test]
fn oscillator_kernel_approaches_halfplane() {
    let cfg = QuadratureConfig::default();
    let p = pt(1.0, 0.3, -0.2);
    let k = oscillator_poisson_kernel(&p, a(1e-4), &cfg).unwrap().value;
    assert_relative_eq!(k, halfplane_poisson_kernel(&p).value, max_relative = 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oscillator_kernel_positive_and_symmetric(
        y in 0.1f64..3.0, x in -2.0f64..2.0, xp in -2.0f64..2.0, av in 0.2f64..3.0,
    ) {
        let cfg = QuadratureConfig::default();
        let p = pt(y, x, xp);
        let k1 = oscillator_poisson_kernel(&p, a(av), &cfg).unwrap();
        let k2 = oscillator_poisson_kernel(&p.swapped(), a(av), &cfg).unwrap();
        prop_assert!(k1.value > 0.0);
        prop_assert!((k1.value - k2.value).abs() <= 1e-9 * k1.value);
        // dominated by the a = 0 kernel
        prop_assert!(k1.value <= halfplane_poisson_kernel(&p).value * (1.0 + 1e-9));
    }

    #[test]
    fn mehler_kernel_is_symmetric(t in 0.05f64..2.0, x in -3.0f64..3.0, xp in -3.0f64..3.0, av in 0.1f64..3.0) {
        let m1 = mehler_heat_kernel(t, x, xp, a(av)).unwrap().value;
        let m2 = mehler_heat_kernel(t, xp, x, a(av)).unwrap().value;
        prop_assert!(m1 > 0.0);
        prop_assert!((m1 - m2).abs() <= 1e-14 * m1);
    }
}

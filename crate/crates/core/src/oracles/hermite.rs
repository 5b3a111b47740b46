use std::f64::consts::PI;

use crate::error::{ensure_finite, Result};
use crate::kernels::OscillatorParam;

/// Uniform bound `sup_x |φₙ(x)| ≤ 0.816·a^{1/4}` (Cramér's inequality).
pub const HERMITE_SUP_BOUND: f64 = 0.816;

const RESCALE_AT: f64 = 1e150;

/// L²-normalised eigenfunction `φₙ` of `-∂²/∂x² + a²x²` (eigenvalue
/// `(2n+1)a`).
///
/// Runs the normalised three-term recurrence in `z = √a·x` on the polynomial
/// part and keeps the Gaussian factor as a separate logarithm, so neither the
/// polynomial nor `e^{-z²/2}` can overflow or underflow on the way.
pub fn hermite_function(n: usize, a: OscillatorParam, x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(*hermite_functions(n, a, x)?.last().expect("n + 1 values"))
}

/// `[φ₀(x), …, φₙ(x)]`
pub fn hermite_functions(n: usize, a: OscillatorParam, x: f64) -> Result<Vec<f64>> {
    ensure_finite("x", x)?;
    let a = a.value();
    let z = a.sqrt() * x;
    let mut ln_scale = 0.25 * (a / PI).ln() - 0.5 * z * z;
    let mut out = Vec::with_capacity(n + 1);
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    let emit = |h: f64, ln_scale: f64| {
        if h == 0.0 {
            0.0
        } else {
            h.signum() * (h.abs().ln() + ln_scale).exp()
        }
    };
    out.push(emit(cur, ln_scale));
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * z * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            cur /= RESCALE_AT;
            prev /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }
        out.push(emit(cur, ln_scale));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_real_line, QuadratureConfig};
    use approx::assert_relative_eq;

    fn a(v: f64) -> OscillatorParam {
        OscillatorParam::new(v).unwrap()
    }

    #[test]
    fn ground_state_at_origin() {
        assert_relative_eq!(
            hermite_function(0, a(1.0), 0.0).unwrap(),
            0.751_125_544_464_942_5,
            max_relative = 1e-15
        );
        for av in [0.3, 1.0, 4.0] {
            assert_eq!(hermite_function(1, a(av), 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn first_excited_state() {
        assert_relative_eq!(
            hermite_function(1, a(1.0), 0.5).unwrap(),
            0.468_717_019_889_251_7,
            max_relative = 1e-14
        );
    }

    #[test]
    fn orthonormality_by_quadrature() {
        let cfg = QuadratureConfig::default();
        let ip = |m: usize, n: usize| {
            integrate_real_line(
                |x| hermite_function(m, a(1.0), x).unwrap() * hermite_function(n, a(1.0), x).unwrap(),
                0.0,
                1.0,
                &cfg,
            )
            .unwrap()
            .value
        };
        assert!((ip(0, 0) - 1.0).abs() < 1e-12);
        assert!(ip(0, 2).abs() < 1e-12);
    }

    #[test]
    fn eigen_relation_by_finite_differences() {
        // -φ'' + a²x²φ = (2n+1)aφ
        let (n, av, x, h) = (7, 1.7, 0.9, 1e-3);
        let f = |x: f64| hermite_function(n, a(av), x).unwrap();
        let lap = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        let lhs = -lap + av * av * x * x * f(x);
        assert_relative_eq!(lhs, (2 * n + 1) as f64 * av * f(x), max_relative = 1e-5);
    }

    #[test]
    fn no_overflow_at_high_order_or_far_out() {
        for &x in &[0.0, 3.0, 25.0, 60.0, -200.0] {
            let vals = hermite_functions(500, a(1.0), x).unwrap();
            assert!(vals.iter().all(|v| v.is_finite()));
        }
        // deep in the classically forbidden region
        let v = hermite_function(500, a(1.0), 45.0).unwrap();
        assert!(v.abs() < 1e-100 && v != 0.0);
    }

    #[test]
    fn uniform_bound_holds() {
        for av in [0.5f64, 1.0, 2.0] {
            let bound = HERMITE_SUP_BOUND * av.powf(0.25);
            for i in 0..=400 {
                let x = -12.0 + 0.06 * i as f64;
                let vals = hermite_functions(200, a(av), x).unwrap();
                assert!(vals.iter().all(|v| v.abs() <= bound), "a={av} x={x}");
            }
        }
    }
}

//! Eigenfunction expansions of the oscillator heat and Poisson kernels,
//!
//! ```text
//! e^{tH_a}:        Σₙ e^{-(2n+1)at}    φₙ(x) φₙ(x')
//! e^{-y√(-H_a)}:   Σₙ e^{-y√((2n+1)a)} φₙ(x) φₙ(x')
//! ```
//!
//! summed in double-double arithmetic. These share no code with the
//! closed-form Mehler kernel or the subordination quadrature.

use std::f64::consts::PI;

use super::ddouble::Dd;
use super::hermite::HERMITE_SUP_BOUND;
use crate::error::{ensure_finite, ensure_positive, invalid, Error, Result};
use crate::kernels::OscillatorParam;

/// Largest `|√a·x|` accepted: the polynomial part of `φₙ` grows like
/// `e^{z²/2}` and must stay inside the `f64` exponent range.
const MAX_SCALED_COORDINATE: f64 = 20.0;

const PI_DD: Dd = Dd::from_parts(PI, 1.224_646_799_147_353_2e-16);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    /// Highest eigenfunction index kept.
    pub n_max: usize,
    pub a: OscillatorParam,
    /// Absolute bound the truncation tail must stay below.
    pub tolerance: f64,
}

impl SpectralConfig {
    /// Heat-kernel default: 60 terms, tail below 10^{-12}.
    pub fn heat(a: OscillatorParam) -> Self {
        SpectralConfig {
            n_max: 60,
            a,
            tolerance: 1e-12,
        }
    }

    /// Poisson-kernel default: 200 terms, tail below 10^{-6}.
    pub fn poisson(a: OscillatorParam) -> Self {
        SpectralConfig {
            n_max: 200,
            a,
            tolerance: 1e-6,
        }
    }

    /// Fewest terms whose heat-sum tail bound at time `t` is below `tolerance`.
    pub fn for_heat(t: f64, a: OscillatorParam, tolerance: f64) -> Result<Self> {
        ensure_positive("t", t)?;
        ensure_positive("tolerance", tolerance)?;
        let n_max = smallest_order(|n| heat_tail_bound(t, a, n), tolerance)?;
        Ok(SpectralConfig { n_max, a, tolerance })
    }

    /// Fewest terms whose Poisson-sum tail bound at height `y` is below
    /// `tolerance`.
    pub fn for_poisson(y: f64, a: OscillatorParam, tolerance: f64) -> Result<Self> {
        ensure_positive("y", y)?;
        ensure_positive("tolerance", tolerance)?;
        let n_max = smallest_order(|n| poisson_tail_bound(y, a, n), tolerance)?;
        Ok(SpectralConfig { n_max, a, tolerance })
    }
}

fn smallest_order(bound: impl Fn(usize) -> f64, tolerance: f64) -> Result<usize> {
    const CEILING: usize = 1 << 24;
    let mut hi = 1;
    while bound(hi) > tolerance {
        hi *= 2;
        if hi > CEILING {
            return Err(invalid(format!("no truncation order below {CEILING} reaches {tolerance:e}")));
        }
    }
    let mut lo = hi / 2;
    if bound(lo) <= tolerance {
        return Ok(lo.max(1));
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if bound(mid) <= tolerance {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn sup_bound_squared(a: OscillatorParam) -> f64 {
    HERMITE_SUP_BOUND * HERMITE_SUP_BOUND * a.value().sqrt()
}

/// Bound on `|Σ_{n>N} e^{-(2n+1)at} φₙ(x)φₙ(x')|`: a geometric series.
pub fn heat_tail_bound(t: f64, a: OscillatorParam, n_max: usize) -> f64 {
    let at = a.value() * t;
    sup_bound_squared(a) * (-(2.0 * n_max as f64 + 3.0) * at).exp() / -(-2.0 * at).exp_m1()
}

/// Bound on `|Σ_{n>N} e^{-y√((2n+1)a)} φₙ(x)φₙ(x')|` by the integral of the
/// decreasing weight over `[N, ∞)`: `(s+1)e^{-s}/(y²a)` with `s = y√((2N+1)a)`.
pub fn poisson_tail_bound(y: f64, a: OscillatorParam, n_max: usize) -> f64 {
    let av = a.value();
    let s = y * ((2.0 * n_max as f64 + 1.0) * av).sqrt();
    sup_bound_squared(a) * (s + 1.0) * (-s).exp() / (y * y * av)
}

fn check_tail(sc: &SpectralConfig, tail_bound: f64) -> Result<()> {
    if tail_bound > sc.tolerance {
        Err(Error::InsufficientOrder {
            n_max: sc.n_max,
            tail_bound,
            tolerance: sc.tolerance,
        })
    } else {
        Ok(())
    }
}

/// Polynomial parts `hₙ(z) = φₙ(x) / ((a/π)^{1/4} e^{-z²/2})`.
fn hermite_polynomials(n_max: usize, z: Dd) -> Vec<Dd> {
    let mut h = Vec::with_capacity(n_max + 1);
    h.push(Dd::ONE);
    if n_max >= 1 {
        h.push(z * Dd::new(2.0).sqrt());
    }
    for k in 1..n_max {
        let kp1 = Dd::new((k + 1) as f64);
        let c1 = (Dd::new(2.0) / kp1).sqrt();
        let c2 = (Dd::new(k as f64) / kp1).sqrt();
        let next = c1 * z * h[k] - c2 * h[k - 1];
        h.push(next);
    }
    h
}

fn spectral_sum(x: f64, xp: f64, sc: &SpectralConfig, weight: impl Fn(usize) -> Dd) -> Result<f64> {
    ensure_finite("x", x)?;
    ensure_finite("x'", xp)?;
    let a = Dd::new(sc.a.value());
    let root_a = a.sqrt();
    let (z, zp) = (root_a.mul_f64(x), root_a.mul_f64(xp));
    if z.to_f64().abs() > MAX_SCALED_COORDINATE || zp.to_f64().abs() > MAX_SCALED_COORDINATE {
        return Err(invalid(format!(
            "spectral oracle limited to |√a·x| <= {MAX_SCALED_COORDINATE}"
        )));
    }
    let hz = hermite_polynomials(sc.n_max, z);
    let hzp = hermite_polynomials(sc.n_max, zp);
    let mut sum = Dd::ZERO;
    for n in 0..=sc.n_max {
        sum = sum + weight(n) * hz[n] * hzp[n];
    }
    let gauss = (-(z * z + zp * zp).mul_f64(0.5)).exp();
    let norm = (a / PI_DD).sqrt();
    Ok((norm * gauss * sum).to_f64())
}

/// Heat kernel `e^{tH_a}(x, x')` as a truncated eigenfunction sum.
pub fn spectral_heat_kernel(t: f64, x: f64, xp: f64, sc: &SpectralConfig) -> Result<f64> {
    ensure_positive("t", t)?;
    check_tail(sc, heat_tail_bound(t, sc.a, sc.n_max))?;
    let at = Dd::new(sc.a.value()).mul_f64(t);
    spectral_sum(x, xp, sc, |n| (-at.mul_f64((2 * n + 1) as f64)).exp())
}

/// Poisson kernel `e^{-y√(-H_a)}(x, x')` as a truncated eigenfunction sum.
pub fn spectral_poisson_kernel(y: f64, x: f64, xp: f64, sc: &SpectralConfig) -> Result<f64> {
    ensure_positive("y", y)?;
    check_tail(sc, poisson_tail_bound(y, sc.a, sc.n_max))?;
    let a = Dd::new(sc.a.value());
    spectral_sum(x, xp, sc, |n| (-(a.mul_f64((2 * n + 1) as f64)).sqrt().mul_f64(y)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::mehler_heat_kernel;
    use approx::assert_relative_eq;

    fn a(v: f64) -> OscillatorParam {
        OscillatorParam::new(v).unwrap()
    }

    #[test]
    fn heat_sum_at_origin() {
        let v = spectral_heat_kernel(0.5, 0.0, 0.0, &SpectralConfig::heat(a(1.0))).unwrap();
        assert_relative_eq!(v, 0.368_005_198_707_560_8, max_relative = 1e-14);
    }

    #[test]
    fn heat_sum_matches_mehler() {
        let v = spectral_heat_kernel(1.0, 1.0, -1.0, &SpectralConfig::heat(a(1.0))).unwrap();
        let m = mehler_heat_kernel(1.0, 1.0, -1.0, a(1.0)).unwrap().value;
        assert!(((v - m) / m).abs() <= 1e-10);
    }

    #[test]
    fn heat_sum_resolves_deep_cancellation() {
        // kernel ~ 1e-18 while the largest terms are O(1)
        let (t, x, xp) = (0.1, 2.0, -2.0);
        let sc = SpectralConfig::for_heat(t, a(0.5), 1e-32).unwrap();
        let v = spectral_heat_kernel(t, x, xp, &sc).unwrap();
        let m = mehler_heat_kernel(t, x, xp, a(0.5)).unwrap().value;
        assert!(m < 1e-15);
        assert!(((v - m) / m).abs() <= 1e-10, "{v:e} vs {m:e}");
    }

    #[test]
    fn poisson_sum_reference_value() {
        let v = spectral_poisson_kernel(1.0, 0.0, 0.0, &SpectralConfig::poisson(a(1.0))).unwrap();
        assert!((v - 0.259_553_271_994_330_76).abs() < 1e-8);
        let sc = SpectralConfig::for_poisson(1.0, a(1.0), 1e-15).unwrap();
        let v = spectral_poisson_kernel(1.0, 0.0, 0.0, &sc).unwrap();
        assert_relative_eq!(v, 0.259_553_271_994_330_76, max_relative = 1e-13);
    }

    #[test]
    fn low_order_is_rejected() {
        let sc = SpectralConfig {
            n_max: 5,
            ..SpectralConfig::poisson(a(1.0))
        };
        assert!(matches!(
            spectral_poisson_kernel(1.0, 0.0, 0.0, &sc),
            Err(Error::InsufficientOrder { n_max: 5, .. })
        ));
        let sc = SpectralConfig::heat(a(0.5));
        assert!(matches!(
            spectral_heat_kernel(0.1, 0.0, 0.0, &sc),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn automatic_order_is_minimal() {
        let (y, av, tol) = (0.5, a(0.7), 1e-10);
        let sc = SpectralConfig::for_poisson(y, av, tol).unwrap();
        assert!(poisson_tail_bound(y, av, sc.n_max) <= tol);
        assert!(poisson_tail_bound(y, av, sc.n_max - 1) > tol);
        let sc = SpectralConfig::for_heat(0.2, av, tol).unwrap();
        assert!(heat_tail_bound(0.2, av, sc.n_max) <= tol);
        assert!(heat_tail_bound(0.2, av, sc.n_max - 1) > tol);
    }

    #[test]
    fn odd_terms_vanish_at_origin() {
        let h = hermite_polynomials(9, Dd::ZERO);
        for n in (1..=9).step_by(2) {
            assert_eq!(h[n].to_f64(), 0.0);
        }
    }

    #[test]
    fn far_coordinates_are_rejected() {
        let sc = SpectralConfig::heat(a(1.0));
        assert!(spectral_heat_kernel(1.0, 30.0, 0.0, &sc).is_err());
    }
}

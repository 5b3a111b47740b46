//! Mass and semigroup (Chapman–Kolmogorov) identities of the kernels,
//! checked by quadrature of the kernel convolutions.

use std::cell::RefCell;

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::kernels::{
    dirac_density, euler_kernel, ln_dirac_density, mehler_heat_kernel, oscillator_poisson_kernel_with,
    EvaluationPoint, KernelValue, OscillatorParam, Prefactor,
};
use crate::quadrature::{
    integrate_interval, integrate_real_line, integrate_semi_infinite, LogScalar, QuadratureConfig,
    QuadratureResult,
};

use super::VerificationReport;

/// Tolerance of the semigroup checks.
pub const SEMIGROUP_TOLERANCE: f64 = 1e-6;

fn converged(r: QuadratureResult) -> Result<f64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NotConverged {
            value: r.value,
            error_estimate: r.error_estimate,
        })
    }
}

fn relative_gap(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / rhs.abs()
}

/// `|∫₀^∞ P_D(y, 0, s) ds - 1|`
pub fn dirac_unit_mass(y: f64, cfg: &QuadratureConfig) -> Result<VerificationReport> {
    ensure_positive("y", y)?;
    let mass = converged(integrate_semi_infinite(
        |s| LogScalar::positive(ln_dirac_density(y, s)),
        cfg,
    )?)?;
    Ok(VerificationReport::new(
        "dirac-unit-mass",
        (mass - 1.0).abs(),
        1e-10,
        format!("y={y}"),
    ))
}

/// `∫ P_D(y₁, X, Z) P_D(y₂, Z, X') dZ` against `P_D(y₁+y₂, X, X')`, with
/// `X < X'`.
pub fn dirac_semigroup_gap(y1: f64, y2: f64, x: f64, xp: f64, cfg: &QuadratureConfig) -> Result<VerificationReport> {
    ensure_positive("y1", y1)?;
    ensure_positive("y2", y2)?;
    ensure_finite("X", x)?;
    ensure_finite("X'", xp)?;
    let lhs = converged(integrate_interval(
        |d1, d2| dirac_density(y1, d1) * dirac_density(y2, d2),
        x,
        xp,
        cfg,
    )?)?;
    let rhs = dirac_density(y1 + y2, xp - x);
    Ok(VerificationReport::new(
        "dirac-semigroup",
        relative_gap(lhs, rhs),
        SEMIGROUP_TOLERANCE,
        format!("y1={y1} y2={y2} X={x} X'={xp}"),
    ))
}

/// Euler analogue over the intermediate point `η` between `ξ'` and `ξ`
/// (same sign, `|ξ'| < |ξ|`).
pub fn euler_semigroup_gap(
    y1: f64,
    y2: f64,
    xi: f64,
    xip: f64,
    a: OscillatorParam,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    ensure_positive("y1", y1)?;
    ensure_positive("y2", y2)?;
    let rhs = euler_kernel(&EvaluationPoint::new(y1 + y2, xi, xip)?, a)?.value;
    if xi.signum() != xip.signum() || xip.abs() >= xi.abs() {
        return Err(crate::error::invalid("need 0 < |xi'| < |xi| on one branch"));
    }
    let (big, small, av) = (xi.abs(), xip.abs(), a.value());
    // P_E(y, ξ, η) = P_D(y, L/2a) / (2aη) with L = ln(|ξ|/η); both logs are
    // taken from the endpoint distances to keep them accurate near the ends.
    let lhs = converged(integrate_interval(
        |d_lo, d_hi| {
            let eta = small + d_lo;
            let l1 = -(-d_hi / big).ln_1p();
            let l2 = (d_lo / small).ln_1p();
            dirac_density(y1, l1 / (2.0 * av)) / (2.0 * av * eta)
                * dirac_density(y2, l2 / (2.0 * av))
                / (2.0 * av * small)
        },
        small,
        big,
        cfg,
    )?)?;
    Ok(VerificationReport::new(
        "euler-semigroup",
        relative_gap(lhs, rhs),
        SEMIGROUP_TOLERANCE,
        format!("y1={y1} y2={y2} xi={xi} xi'={xip} a={av}"),
    ))
}

/// Integrates a kernel product over the real line; the first kernel failure
/// is kept and returned.
fn convolve(
    kernel: impl Fn(f64) -> Result<KernelValue>,
    center: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let failure = RefCell::new(None);
    let r = integrate_real_line(
        |z| match kernel(z) {
            Ok(k) if k.converged => k.value,
            Ok(k) => {
                failure.borrow_mut().get_or_insert(Error::NotConverged {
                    value: k.value,
                    error_estimate: k.error_estimate,
                });
                0.0
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        center,
        scale,
        cfg,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    converged(r)
}

/// `∫ K(t₁, x, z) K(t₂, z, x') dz` against `K(t₁+t₂, x, x')` for the Mehler
/// kernel.
pub fn mehler_semigroup_gap(
    t1: f64,
    t2: f64,
    x: f64,
    xp: f64,
    a: OscillatorParam,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    let rhs = mehler_heat_kernel(t1 + t2, x, xp, a)?.value;
    let lhs = convolve(
        |z| {
            let k1 = mehler_heat_kernel(t1, x, z, a)?;
            let k2 = mehler_heat_kernel(t2, z, xp, a)?;
            Ok(KernelValue::exact(k1.value * k2.value))
        },
        0.5 * (x + xp),
        t1.min(t2).sqrt(),
        cfg,
    )?;
    Ok(VerificationReport::new(
        "mehler-semigroup",
        relative_gap(lhs, rhs),
        SEMIGROUP_TOLERANCE,
        format!("t1={t1} t2={t2} x={x} x'={xp} a={}", a.value()),
    ))
}

/// `∫ P_H(y₁, x, z) P_H(y₂, z, x') dz` against `P_H(y₁+y₂, x, x')`. The
/// kernels are evaluated at `kernel_cfg`, the outer integral at `cfg`.
pub fn oscillator_semigroup_gap(
    y1: f64,
    y2: f64,
    x: f64,
    xp: f64,
    a: OscillatorParam,
    kernel_cfg: &QuadratureConfig,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    oscillator_semigroup_gap_with(y1, y2, x, xp, a, kernel_cfg, cfg, Prefactor::Corrected)
}

#[allow(clippy::too_many_arguments)]
pub fn oscillator_semigroup_gap_with(
    y1: f64,
    y2: f64,
    x: f64,
    xp: f64,
    a: OscillatorParam,
    kernel_cfg: &QuadratureConfig,
    cfg: &QuadratureConfig,
    prefactor: Prefactor,
) -> Result<VerificationReport> {
    let kernel = |y: f64, from: f64, to: f64| {
        oscillator_poisson_kernel_with(&EvaluationPoint::new(y, from, to)?, a, kernel_cfg, prefactor)
    };
    let rhs = kernel(y1 + y2, x, xp)?;
    let lhs = convolve(
        |z| {
            let k1 = kernel(y1, x, z)?;
            let k2 = kernel(y2, z, xp)?;
            Ok(KernelValue {
                value: k1.value * k2.value,
                error_estimate: 0.0,
                converged: k1.converged && k2.converged,
            })
        },
        0.5 * (x + xp),
        y1.min(y2),
        cfg,
    )?;
    Ok(VerificationReport::new(
        "oscillator-semigroup",
        relative_gap(lhs, rhs.value),
        SEMIGROUP_TOLERANCE,
        format!("y1={y1} y2={y2} x={x} x'={xp} a={}", a.value()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> OscillatorParam {
        OscillatorParam::new(v).unwrap()
    }

    #[test]
    fn dirac_density_has_unit_mass() {
        let cfg = QuadratureConfig::default();
        for y in [0.01, 1.0, 50.0] {
            let r = dirac_unit_mass(y, &cfg).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn dirac_and_euler_semigroups() {
        let cfg = QuadratureConfig::default();
        let r = dirac_semigroup_gap(0.5, 1.0, 0.0, 1.5, &cfg).unwrap();
        assert!(r.passed, "{r}");
        let r = euler_semigroup_gap(0.5, 0.7, 2.0, 0.3, a(1.0), &cfg).unwrap();
        assert!(r.passed, "{r}");
        let r = euler_semigroup_gap(0.5, 0.7, -2.0, -0.3, a(0.5), &cfg).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn mehler_and_oscillator_semigroups() {
        let cfg = QuadratureConfig::default();
        let r = mehler_semigroup_gap(0.3, 0.5, 0.4, -0.2, a(1.0), &cfg).unwrap();
        assert!(r.passed, "{r}");
        let kcfg = cfg.with_rel_tol(1e-12).unwrap();
        let r = oscillator_semigroup_gap(0.5, 0.5, 0.0, 0.3, a(1.0), &kcfg, &cfg).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn wrong_branch_is_rejected() {
        let cfg = QuadratureConfig::default();
        assert!(euler_semigroup_gap(0.5, 0.5, 1.0, 2.0, a(1.0), &cfg).is_err());
        assert!(euler_semigroup_gap(0.5, 0.5, 1.0, 0.0, a(1.0), &cfg).is_err());
    }
}

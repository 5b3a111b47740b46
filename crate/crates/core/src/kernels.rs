//! Poisson-type kernels of the Laplace extension problems
//!
//! ```text
//! (D   + ∂²_y) u = 0,   D   = ∂/∂X
//! (E_a + ∂²_y) v = 0,   E_a = -2aξ ∂/∂ξ
//! (H_a + ∂²_y) w = 0,   H_a = ∂²/∂x² - a²x²
//! ```
//!
//! on `y > 0`, each solved by integrating boundary data against the kernel
//! of `e^{-y√(-Op)}`. The Dirac and Euler kernels are closed forms; the
//! oscillator kernel is the subordination integral of the Mehler heat kernel
//! against the stable-1/2 density in `u`.

use std::f64::consts::PI;

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::quadrature::{integrate_semi_infinite, Estimate, LogScalar, QuadratureConfig};

/// Kernel value with an absolute error estimate (zero for closed forms).
pub type KernelValue = Estimate;

/// Location of one kernel evaluation: height `y` above the boundary, the
/// point `target` where the solution is read and the integration variable
/// `source`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationPoint {
    y: f64,
    target: f64,
    source: f64,
}

impl EvaluationPoint {
    pub fn new(y: f64, target: f64, source: f64) -> Result<Self> {
        ensure_positive("y", y)?;
        ensure_finite("target", target)?;
        ensure_finite("source", source)?;
        Ok(EvaluationPoint { y, target, source })
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn source(&self) -> f64 {
        self.source
    }

    pub fn swapped(&self) -> Self {
        EvaluationPoint {
            y: self.y,
            target: self.source,
            source: self.target,
        }
    }
}

/// Frequency `a > 0` of the Euler operator and the oscillator.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OscillatorParam(f64);

impl OscillatorParam {
    pub fn new(a: f64) -> Result<Self> {
        ensure_positive("a", a)?;
        Ok(OscillatorParam(a))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `ln(2√π)`
const LN_TWO_SQRT_PI: f64 = 1.265_512_123_484_645_4;

/// Stable-1/2 density `y/(2√π) s^{-3/2} e^{-y²/(4s)}` for `s > 0`, zero
/// otherwise.
pub fn dirac_density(y: f64, s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let arg = y * y / (4.0 * s);
    if arg > 745.0 {
        return 0.0;
    }
    // s^{-3/2} as 1/(s√s) keeps the scaling in powers of four exact.
    y / (2.0 * PI.sqrt()) / (s * s.sqrt()) * (-arg).exp()
}

/// `ln` of [`dirac_density`]; `-∞` off the support.
pub fn ln_dirac_density(y: f64, s: f64) -> f64 {
    if s <= 0.0 {
        return f64::NEG_INFINITY;
    }
    y.ln() - LN_TWO_SQRT_PI - 1.5 * s.ln() - y * y / (4.0 * s)
}

/// Kernel of the Dirac problem: the stable-1/2 density in `X' - X`,
/// supported on `X' > X`.
pub fn dirac_kernel(p: &EvaluationPoint) -> KernelValue {
    KernelValue::exact(dirac_density(p.y, p.source - p.target))
}

/// The coordinate `X = ln|ξ| / (-2a)` that conjugates the Euler operator to
/// `∂/∂X`.
pub fn euler_coordinate(xi: f64, a: OscillatorParam) -> Result<f64> {
    if xi == 0.0 {
        return Err(Error::DegenerateCharacteristic { coordinate: xi });
    }
    ensure_finite("xi", xi)?;
    Ok(xi.abs().ln() / (-2.0 * a.0))
}

/// Kernel of the Euler problem, supported on the same-sign branch
/// `0 < |ξ'| < |ξ|`.
pub fn euler_kernel(p: &EvaluationPoint, a: OscillatorParam) -> Result<KernelValue> {
    let (xi, xs) = (p.target, p.source);
    for c in [xi, xs] {
        if c == 0.0 {
            return Err(Error::DegenerateCharacteristic { coordinate: c });
        }
    }
    if xi.signum() != xs.signum() || xs.abs() >= xi.abs() {
        return Ok(KernelValue::exact(0.0));
    }
    let a = a.0;
    let log_ratio = (xi / xs).abs().ln();
    let ln_v = 0.5 * (a / (2.0 * PI)).ln() + p.y.ln()
        - xs.abs().ln()
        - 1.5 * log_ratio.ln()
        - a * p.y * p.y / (2.0 * log_ratio);
    Ok(KernelValue::exact(ln_v.exp()))
}

/// `ln sinh(z)` for `z > 0`, without overflow.
fn ln_sinh(z: f64) -> f64 {
    z - std::f64::consts::LN_2 + (-(-2.0 * z).exp_m1()).ln()
}

/// `ln K_a(t, x, x') - ln √(a/2π)`: the part of the Mehler kernel that
/// depends on `t`.
///
/// The exponent `-(a/2)(x²+x'²)coth(2at) + axx'/sinh(2at)` is evaluated as
/// `-(a/2)(x-x')² coth(2at) - a x x' tanh(at)`, which has no cancellation
/// between the two hyperbolic terms as `at → 0`.
fn mehler_shape(t: f64, x: f64, xp: f64, a: f64) -> f64 {
    let z = 2.0 * a * t;
    let d = x - xp;
    -0.5 * ln_sinh(z) - 0.5 * a * d * d / z.tanh() - a * x * xp * (a * t).tanh()
}

/// `ln K_a(t, x, x')` without argument checks.
pub fn ln_mehler_heat_kernel(t: f64, x: f64, xp: f64, a: f64) -> f64 {
    0.5 * (a / (2.0 * PI)).ln() + mehler_shape(t, x, xp, a)
}

/// Mehler kernel of the oscillator heat semigroup `e^{tH_a}`.
pub fn mehler_heat_kernel(t: f64, x: f64, xp: f64, a: OscillatorParam) -> Result<KernelValue> {
    ensure_positive("t", t)?;
    ensure_finite("x", x)?;
    ensure_finite("x'", xp)?;
    Ok(KernelValue::exact(ln_mehler_heat_kernel(t, x, xp, a.0).exp()))
}

/// Constant in front of the oscillator subordination integral
/// `∫₀^∞ u^{-3/2} sinh(2au)^{-1/2} exp{…} du`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Prefactor {
    /// `(y/(2√π))·√(a/(2π))`: the stable-1/2 normalisation times the Mehler
    /// normalisation. Reproduces the spectral kernel and the half-plane limit.
    #[default]
    Corrected,
    /// `√a·y/(2π)`, which is `√2` times too large.
    AsPrinted,
}

impl Prefactor {
    pub fn coefficient(self, y: f64, a: f64) -> f64 {
        match self {
            Prefactor::Corrected => y * a.sqrt() / (2.0 * PI * std::f64::consts::SQRT_2),
            Prefactor::AsPrinted => a.sqrt() * y / (2.0 * PI),
        }
    }
}

/// Kernel of `e^{-y√(-H_a)}`, by quadrature of the subordination integral.
///
/// A quadrature that fails to converge comes back with `converged == false`
/// and its last error estimate.
pub fn oscillator_poisson_kernel(
    p: &EvaluationPoint,
    a: OscillatorParam,
    cfg: &QuadratureConfig,
) -> Result<KernelValue> {
    oscillator_poisson_kernel_with(p, a, cfg, Prefactor::Corrected)
}

pub fn oscillator_poisson_kernel_with(
    p: &EvaluationPoint,
    a: OscillatorParam,
    cfg: &QuadratureConfig,
    prefactor: Prefactor,
) -> Result<KernelValue> {
    let (y, x, xp, a) = (p.y, p.target, p.source, a.0);
    let ln_c = prefactor.coefficient(y, a).ln();
    let q = y * y / 4.0;
    let r = integrate_semi_infinite(
        |u| LogScalar::positive(ln_c - 1.5 * u.ln() - q / u + mehler_shape(u, x, xp, a)),
        cfg,
    )?;
    Ok(r.estimate())
}

/// Classical Poisson kernel of the upper half-plane.
pub fn halfplane_poisson_kernel(p: &EvaluationPoint) -> KernelValue {
    let d = p.target - p.source;
    KernelValue::exact(p.y / (PI * (p.y * p.y + d * d)))
}

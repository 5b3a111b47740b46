//! Solution operators of the three extension problems applied to boundary
//! data.
//!
//! The Dirac and Euler problems are both integrals of the data against the
//! stable-1/2 density in the characteristic variable `s ≥ 0`:
//!
//! ```text
//! u(y, X) = ∫₀^∞ P_D(y, s) u₀(X + s) ds
//! v(y, ξ) = ∫₀^∞ P_D(y, s) v₀(ξ e^{-2as}) ds
//! ```
//!
//! the second being the first after `X = ln|ξ|/(-2a)`, which also removes
//! the `1/|ξ'|` singularity of the Euler kernel. The oscillator problem
//! integrates the quadrature kernel against the data in `x'`.

mod data;
mod grid;
mod spline;

pub use data::{InitialData, Problem, Support};
pub use grid::{solve_grid, CellFailure, SolutionGrid, SolveRequest};
pub use spline::CubicSpline;

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::kernels::{dirac_density, oscillator_poisson_kernel, EvaluationPoint, OscillatorParam};
use crate::quadrature::{integrate_panels, Estimate, QuadratureConfig};

/// A solution value with its absolute error estimate.
pub type SolutionValue = Estimate;

/// Width in `ln s` of the coarsest panels of the subordinated integral.
const LOG_PANEL_WIDTH: f64 = 2.0;

/// Panel doublings allowed for the `x'` integral of the oscillator solver,
/// where each sample is itself a quadrature.
const MAX_OSCILLATOR_DOUBLINGS: u32 = 8;

/// `g∞ + ∫₀^{s_max} P_D(y, s) (g(s) - g∞) ds`, where `g∞` is the limit of `g`
/// at infinity and `g - g∞` is negligible beyond `s_max`.
///
/// Integrated in `ln s` on Gauss–Legendre panels. The part of the density
/// below `s = y²/(4(cutoff + 5))` is dropped; the neglected tail beyond
/// `s_max` is estimated as `|g(s_max) - g∞|·P(s > s_max)` and folded into the
/// error estimate.
fn subordinated<G>(y: f64, g: G, g_inf: f64, s_max: f64, s_breaks: &[f64], cfg: &QuadratureConfig) -> Result<Estimate>
where
    G: Fn(f64) -> f64,
{
    let s_min = y * y / (4.0 * (cfg.decay_cutoff + 5.0));
    if !(s_max > s_min) {
        return Ok(Estimate::exact(g_inf));
    }
    let (w_lo, w_hi) = (s_min.ln(), s_max.ln());
    let mut nodes = vec![w_lo, w_hi, (y * y / 6.0).ln()];
    nodes.extend(s_breaks.iter().filter(|&&s| s > 0.0).map(|s| s.ln()));
    let mut w = w_lo + LOG_PANEL_WIDTH;
    while w < w_hi {
        nodes.push(w);
        w += LOG_PANEL_WIDTH;
    }
    nodes.retain(|w| *w >= w_lo && *w <= w_hi);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let r = integrate_panels(
        |w| {
            let s = w.exp();
            let v = dirac_density(y, s) * s * (g(s) - g_inf);
            if v.is_finite() {
                Ok(Estimate::exact(v))
            } else {
                Err(Error::Evaluation { abscissa: s })
            }
        },
        &nodes,
        cfg,
    )?;
    let tail_mass = libm::erf(y / (2.0 * s_max.sqrt()));
    let tail = (g(s_max) - g_inf).abs() * tail_mass;
    let value = g_inf + r.value;
    Ok(Estimate {
        value,
        error_estimate: r.error_estimate + tail,
        converged: r.converged && tail <= cfg.allowance(value).max(r.error_estimate),
    })
}

/// `u(y, X)`: the data integrated against the Dirac kernel over `X' > X`.
pub fn solve_dirac(data: &InitialData, y: f64, x: f64, cfg: &QuadratureConfig) -> Result<SolutionValue> {
    ensure_positive("y", y)?;
    ensure_finite("X", x)?;
    cfg.validate()?;
    data.admissible(&Problem::Dirac)?;
    let s_max = match *data {
        // e^{-c(X+s)} has dropped by e^{-cutoff} relative to the solution
        // e^{-y√c - cX}.
        InitialData::Exponential { rate } => (cfg.decay_cutoff + y * rate.sqrt()) / rate,
        _ => data.support().hi - x,
    };
    if s_max <= 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let breaks: Vec<f64> = data.breakpoints().into_iter().map(|b| b - x).collect();
    subordinated(y, |s| data.eval(x + s), 0.0, s_max, &breaks, cfg)
}

/// `v(y, ξ)` for the Euler problem, computed in the conjugate variable.
pub fn solve_euler(
    data: &InitialData,
    y: f64,
    xi: f64,
    a: OscillatorParam,
    cfg: &QuadratureConfig,
) -> Result<SolutionValue> {
    ensure_positive("y", y)?;
    if xi == 0.0 {
        return Err(Error::DegenerateCharacteristic { coordinate: xi });
    }
    ensure_finite("xi", xi)?;
    cfg.validate()?;
    data.admissible(&Problem::Euler(a))?;
    let (sigma, radius, two_a) = (xi.signum(), xi.abs(), 2.0 * a.value());

    // Limit of the data at ξ' → 0 from ξ's side, and the radius below which
    // the remaining deviation from it is negligible.
    let cutoff = cfg.decay_cutoff;
    let (g_inf, ln_r_min) = match *data {
        InitialData::Power { exponent: 0.0 } => return Ok(Estimate::exact(1.0)),
        InitialData::Power { exponent } => (0.0, -cutoff / exponent),
        InitialData::Gaussian { width, .. } => (data.eval(0.0), width.ln() - cutoff),
        InitialData::Bump { radius, .. } => (data.eval(0.0), radius.ln() - cutoff),
        InitialData::Exponential { rate } => (1.0, -rate.abs().max(1e-300).ln() - cutoff),
        InitialData::Eigenfunction { a, .. } => (data.eval(0.0), -0.5 * a.value().ln() - cutoff),
        InitialData::Sampled(ref s) => {
            let h = s.nodes().windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            (data.eval(sigma * f64::MIN_POSITIVE), h.ln() - cutoff)
        }
    };
    let s_max = (radius.ln() - ln_r_min) / two_a;
    let breaks: Vec<f64> = data
        .breakpoints()
        .into_iter()
        .filter(|b| b * sigma > 0.0 && b.abs() < radius)
        .map(|b| (radius / b.abs()).ln() / two_a)
        .collect();
    subordinated(y, |s| data.eval(xi * (-two_a * s).exp()), g_inf, s_max, &breaks, cfg)
}

/// `w(y, x)`: the oscillator kernel integrated against the data in `x'`.
///
/// Kernel samples are computed at a tolerance a hundred times tighter than
/// `cfg` (but not below `10^{-14}`) and their error estimates are carried
/// into the result.
pub fn solve_oscillator(
    data: &InitialData,
    y: f64,
    x: f64,
    a: OscillatorParam,
    cfg: &QuadratureConfig,
) -> Result<SolutionValue> {
    ensure_positive("y", y)?;
    ensure_finite("x", x)?;
    cfg.validate()?;
    data.admissible(&Problem::Oscillator(a))?;
    let kernel_cfg = cfg.with_rel_tol((cfg.rel_tol * 1e-2).max(1e-14))?;
    let panel_cfg = QuadratureConfig {
        max_refinement_depth: cfg.max_refinement_depth.min(MAX_OSCILLATOR_DOUBLINGS),
        min_refinement_depth: cfg.min_refinement_depth.min(MAX_OSCILLATOR_DOUBLINGS),
        ..*cfg
    };

    let Support { lo, hi } = data.support();
    let mut nodes = vec![lo, hi];
    nodes.extend(data.breakpoints());
    // Resolve the kernel's peak of width ~y at x' = x geometrically.
    let mut d = y;
    while x - d > lo || x + d < hi {
        nodes.push(x - d);
        nodes.push(x + d);
        d *= 4.0;
    }
    nodes.push(x);
    nodes.retain(|v| *v >= lo && *v <= hi);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let r = integrate_panels(
        |xp| {
            let k = oscillator_poisson_kernel(&EvaluationPoint::new(y, x, xp)?, a, &kernel_cfg)?;
            let d = data.eval(xp);
            Ok(Estimate {
                value: k.value * d,
                error_estimate: k.error_estimate * d.abs(),
                converged: k.converged,
            })
        },
        &nodes,
        &panel_cfg,
    )?;
    Ok(r.estimate())
}

/// Dispatches to the solver of `problem`.
pub fn solve(problem: &Problem, data: &InitialData, y: f64, coord: f64, cfg: &QuadratureConfig) -> Result<SolutionValue> {
    match *problem {
        Problem::Dirac => solve_dirac(data, y, coord, cfg),
        Problem::Euler(a) => solve_euler(data, y, coord, a, cfg),
        Problem::Oscillator(a) => solve_oscillator(data, y, coord, a, cfg),
    }
}

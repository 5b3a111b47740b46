//! Limit studies: the `a → 0` limit of the oscillator kernels and the
//! `y → 0` recovery of boundary data.

use std::f64::consts::PI;

use crate::error::{ensure_finite, invalid, Error, Result};
use crate::kernels::{
    halfplane_poisson_kernel, mehler_heat_kernel, oscillator_poisson_kernel_with, EvaluationPoint,
    OscillatorParam, Prefactor,
};
use crate::quadrature::QuadratureConfig;
use crate::solvers::{solve, InitialData, Problem};

use super::VerificationReport;

/// One step of a study: the parameter value and the gap measured there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitStep {
    pub parameter: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitStudy {
    pub steps: Vec<LimitStep>,
    pub reports: Vec<VerificationReport>,
}

impl LimitStudy {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn gaps(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.gap).collect()
    }
}

fn check_sequence(name: &str, seq: &[f64]) -> Result<()> {
    if seq.is_empty() {
        return Err(invalid(format!("{name} must not be empty")));
    }
    if seq.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(invalid(format!("{name} must be positive")));
    }
    if seq.windows(2).any(|w| w[1] >= w[0]) {
        return Err(invalid(format!("{name} must be strictly decreasing")));
    }
    Ok(())
}

/// Largest ratio of consecutive gaps; at most 1 when the gaps never grow.
/// A pair of zero gaps counts as ratio 0.
fn monotone_report(name: &str, steps: &[LimitStep], context: &str) -> VerificationReport {
    let worst = steps
        .windows(2)
        .map(|w| {
            if w[0].gap == 0.0 && w[1].gap == 0.0 {
                0.0
            } else {
                w[1].gap / w[0].gap
            }
        })
        .fold(0.0f64, |m, r| if r.is_nan() { f64::NAN } else { m.max(r) });
    VerificationReport::new(format!("{name}/monotone"), worst, 1.0, context)
}

/// Relative gaps `|P_{H_a} - P|/P` to the half-plane Poisson kernel along a
/// decreasing `a` sequence. Passes when the gaps decrease and the final gap
/// is at most `10·a_final`.
pub fn limit_a_to_zero_gap(
    y: f64,
    x: f64,
    xp: f64,
    a_sequence: &[f64],
    cfg: &QuadratureConfig,
) -> Result<LimitStudy> {
    limit_a_to_zero_gap_with(y, x, xp, a_sequence, cfg, Prefactor::Corrected)
}

pub fn limit_a_to_zero_gap_with(
    y: f64,
    x: f64,
    xp: f64,
    a_sequence: &[f64],
    cfg: &QuadratureConfig,
    prefactor: Prefactor,
) -> Result<LimitStudy> {
    check_sequence("a sequence", a_sequence)?;
    let p = EvaluationPoint::new(y, x, xp)?;
    let target = halfplane_poisson_kernel(&p).value;
    let steps = a_sequence
        .iter()
        .map(|&a| {
            let k = oscillator_poisson_kernel_with(&p, OscillatorParam::new(a)?, cfg, prefactor)?;
            if !k.converged {
                return Err(Error::NotConverged {
                    value: k.value,
                    error_estimate: k.error_estimate,
                });
            }
            Ok(LimitStep {
                parameter: a,
                gap: (k.value - target).abs() / target,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let context = format!("y={y} x={x} x'={xp} prefactor={prefactor:?}");
    let last = *steps.last().expect("non-empty sequence");
    let reports = vec![
        monotone_report("a-to-zero", &steps, &context),
        VerificationReport::new("a-to-zero/final-gap", last.gap, 10.0 * last.parameter, context),
    ];
    Ok(LimitStudy { steps, reports })
}

/// Relative gaps of the Mehler kernel to the free heat kernel
/// `(4πt)^{-1/2} e^{-(x-x')²/(4t)}` along a decreasing `a` sequence.
pub fn mehler_limit_gap(t: f64, x: f64, xp: f64, a_sequence: &[f64]) -> Result<LimitStudy> {
    check_sequence("a sequence", a_sequence)?;
    let d = x - xp;
    let free = (-d * d / (4.0 * t)).exp() / (4.0 * PI * t).sqrt();
    let steps = a_sequence
        .iter()
        .map(|&a| {
            let k = mehler_heat_kernel(t, x, xp, OscillatorParam::new(a)?)?.value;
            Ok(LimitStep {
                parameter: a,
                gap: (k - free).abs() / free,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let context = format!("t={t} x={x} x'={xp}");
    let reports = vec![monotone_report("mehler-limit", &steps, &context)];
    Ok(LimitStudy { steps, reports })
}

/// `sup_x |solution(y, x) - data(x)|` over `spatial_points` for each `y` of
/// a decreasing sequence. Passes when the sup-gaps do not grow.
pub fn boundary_limit_gap(
    problem: &Problem,
    data: &InitialData,
    y_sequence: &[f64],
    spatial_points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<LimitStudy> {
    check_sequence("y sequence", y_sequence)?;
    if spatial_points.is_empty() {
        return Err(invalid("spatial points must not be empty"));
    }
    for &x in spatial_points {
        ensure_finite("spatial point", x)?;
    }
    data.admissible(problem)?;
    let steps = y_sequence
        .iter()
        .map(|&y| {
            let mut sup = 0.0f64;
            for &x in spatial_points {
                let w = solve(problem, data, y, x, cfg)?;
                if !w.converged {
                    return Err(Error::NotConverged {
                        value: w.value,
                        error_estimate: w.error_estimate,
                    });
                }
                sup = sup.max((w.value - data.eval(x)).abs());
            }
            Ok(LimitStep { parameter: y, gap: sup })
        })
        .collect::<Result<Vec<_>>>()?;
    let context = format!("problem={} data={}", problem.name(), data.kind());
    let reports = vec![monotone_report("boundary-limit", &steps, &context)];
    Ok(LimitStudy { steps, reports })
}

//! Named verification suites. Their grids are the acceptance grids, so
//! running [`Suite::All`] checks the whole library against its oracles.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::kernels::{
    dirac_kernel, euler_coordinate, euler_kernel, mehler_heat_kernel, oscillator_poisson_kernel_with,
    EvaluationPoint, OscillatorParam, Prefactor,
};
use crate::oracles::semigroup::{
    dirac_semigroup_gap, dirac_unit_mass, euler_semigroup_gap, mehler_semigroup_gap,
    oscillator_semigroup_gap_with,
};
use crate::oracles::{
    boundary_limit_gap, hermite_function, limit_a_to_zero_gap_with, residual_order_report,
    spectral_heat_kernel, spectral_poisson_kernel, Field, Operator, SpectralConfig,
    VerificationReport,
};
use crate::quadrature::{subordination_base_residual, subordination_derived_residual, QuadratureConfig};
use crate::solvers::{solve, InitialData, Problem};

/// `P_{H_1}(1, 0, 0)` from a 10^{-15}-tail spectral sum, frozen.
pub const REFERENCE_OSCILLATOR_KERNEL: f64 = 0.259_553_271_994_330_76;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Subordination identities and closed-form eigen-solutions.
    Identities,
    /// Mehler and quadrature kernels against the Hermite spectral sums.
    Spectral,
    /// Second-order convergence of finite-difference PDE residuals.
    Residuals,
    /// Mass, conjugation, symmetry, semigroup and limit laws.
    Invariants,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["identities", "spectral", "residuals", "invariants", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "spectral" => Ok(Suite::Spectral),
            "residuals" => Ok(Suite::Residuals),
            "invariants" => Ok(Suite::Invariants),
            "all" => Ok(Suite::All),
            other => Err(invalid(format!(
                "unknown suite {other:?}; expected one of {}",
                Suite::NAMES.join(", ")
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::Identities => 0,
            Suite::Spectral => 1,
            Suite::Residuals => 2,
            Suite::Invariants => 3,
            Suite::All => 4,
        };
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    /// Prefactor of the oscillator kernel under test.
    pub prefactor: Prefactor,
    /// Replaces every check's tolerance when set.
    pub tolerance_override: Option<f64>,
    pub cfg: QuadratureConfig,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            prefactor: Prefactor::Corrected,
            tolerance_override: None,
            cfg: QuadratureConfig::default(),
        }
    }
}

/// Runs `suite` and returns one report per check. Checks that error out are
/// reported as failures rather than aborting the suite.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(subordination_checks(opts));
        out.extend(eigen_solution_checks(opts));
    }
    if matches!(suite, Suite::Spectral | Suite::All) {
        out.extend(heat_spectral_checks());
        out.extend(poisson_spectral_checks(opts));
    }
    if matches!(suite, Suite::Residuals | Suite::All) {
        out.extend(residual_checks(opts));
    }
    if matches!(suite, Suite::Invariants | Suite::All) {
        out.extend(structure_checks(opts));
        out.extend(limit_checks(opts));
    }
    if let Some(tol) = opts.tolerance_override {
        out = out.into_iter().map(|r| r.with_tolerance(tol)).collect();
    }
    out
}

fn or_failed(name: &str, tolerance: f64, r: Result<VerificationReport>) -> VerificationReport {
    r.unwrap_or_else(|e| VerificationReport::failed(name, tolerance, e))
}

fn param(a: f64) -> OscillatorParam {
    OscillatorParam::new(a).expect("suite parameters are positive")
}

fn relative(value: f64, want: f64) -> f64 {
    ((value - want) / want).abs()
}

const SUBORDINATION_GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];

pub fn subordination_checks(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let mut cases = Vec::new();
    for &t in &SUBORDINATION_GRID {
        for &l in &SUBORDINATION_GRID {
            cases.push((t, l, false));
            cases.push((t, l, true));
        }
    }
    cases
        .par_iter()
        .map(|&(t, l, derived)| {
            let (name, r) = if derived {
                ("subordination-derived", subordination_derived_residual(t, l, &opts.cfg))
            } else {
                ("subordination-base", subordination_base_residual(t, l, &opts.cfg))
            };
            or_failed(
                name,
                1e-10,
                r.map(|m| VerificationReport::new(name, m, 1e-10, format!("t={t} lambda={l}"))),
            )
        })
        .collect()
}

const EIGEN_TOLERANCE: f64 = 1e-8;
const EIGEN_Y: [f64; 3] = [0.25, 1.0, 2.0];

/// Closed-form eigen-solutions: 27 parameter triples per problem.
pub fn eigen_solution_checks(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let mut cases = Vec::new();
    for &y in &EIGEN_Y {
        for &c in &[0.5, 1.0, 2.0] {
            for &x in &[-1.0, 0.0, 0.5] {
                let want = (-y * f64::sqrt(c) - c * x).exp();
                cases.push((Problem::Dirac, InitialData::Exponential { rate: c }, y, x, want));
            }
        }
        let a = 0.7;
        for &beta in &[0.25, 0.5, 1.5] {
            for &xi in &[-1.5, 0.4, 2.0] {
                let want = (-y * f64::sqrt(2.0 * a * beta)).exp() * f64::abs(xi).powf(beta);
                cases.push((Problem::Euler(param(a)), InitialData::Power { exponent: beta }, y, xi, want));
            }
        }
        let a = param(1.3);
        for &n in &[0usize, 1, 3] {
            for &x in &[-0.8, 0.3, 1.7] {
                let data = InitialData::Eigenfunction { n, a };
                let decay = (-y * ((2 * n + 1) as f64 * a.value()).sqrt()).exp();
                cases.push((Problem::Oscillator(a), data.clone(), y, x, decay * data.eval(x)));
            }
        }
    }
    cases
        .par_iter()
        .map(|(problem, data, y, x, want)| {
            let name = format!("eigen-solution/{}", problem.name());
            let r = solve(problem, data, *y, *x, &opts.cfg).and_then(|w| {
                if w.converged {
                    Ok(w.value)
                } else {
                    Err(Error::NotConverged {
                        value: w.value,
                        error_estimate: w.error_estimate,
                    })
                }
            });
            or_failed(
                &name,
                EIGEN_TOLERANCE,
                r.map(|v| {
                    VerificationReport::new(
                        name.clone(),
                        relative(v, *want),
                        EIGEN_TOLERANCE,
                        format!("data={data:?} y={y} coord={x}"),
                    )
                }),
            )
        })
        .collect()
}

const SPECTRAL_A: [f64; 3] = [0.5, 1.0, 2.0];

/// Mehler kernel against the spectral heat sum.
pub fn heat_spectral_checks() -> Vec<VerificationReport> {
    const XS: [f64; 5] = [-2.0, -0.5, 0.0, 1.0, 2.0];
    let mut cases = Vec::new();
    for &a in &SPECTRAL_A {
        for &t in &[0.1, 0.5, 1.0] {
            for &x in &XS {
                for &xp in &XS {
                    cases.push((a, t, x, xp));
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(a, t, x, xp)| {
            let name = "mehler-vs-spectral";
            // Values reach 1e-18 against O(1) terms: the tail must be far
            // below the value itself.
            let r = SpectralConfig::for_heat(t, param(a), 1e-32).and_then(|sc| {
                let s = spectral_heat_kernel(t, x, xp, &sc)?;
                let m = mehler_heat_kernel(t, x, xp, param(a))?.value;
                Ok(VerificationReport::new(
                    name,
                    relative(m, s),
                    1e-10,
                    format!("a={a} t={t} x={x} x'={xp} n_max={}", sc.n_max),
                ))
            });
            or_failed(name, 1e-10, r)
        })
        .collect()
}

/// Quadrature oscillator kernel against the spectral Poisson sum, plus the
/// frozen reference value.
pub fn poisson_spectral_checks(opts: &SuiteOptions) -> Vec<VerificationReport> {
    const XS: [f64; 3] = [-1.0, 0.0, 0.7];
    let mut cases = Vec::new();
    for &a in &SPECTRAL_A {
        for &y in &[0.5, 1.0, 2.0] {
            for &x in &XS {
                for &xp in &XS {
                    cases.push((a, y, x, xp));
                }
            }
        }
    }
    let mut out: Vec<_> = cases
        .par_iter()
        .map(|&(a, y, x, xp)| {
            let name = "oscillator-vs-spectral";
            let r = (|| {
                let sc = SpectralConfig::for_poisson(y, param(a), 1e-13)?;
                let s = spectral_poisson_kernel(y, x, xp, &sc)?;
                let p = EvaluationPoint::new(y, x, xp)?;
                let k = oscillator_poisson_kernel_with(&p, param(a), &opts.cfg, opts.prefactor)?;
                Ok(VerificationReport::new(
                    name,
                    relative(k.value, s),
                    1e-8,
                    format!("a={a} y={y} x={x} x'={xp} n_max={}", sc.n_max),
                ))
            })();
            or_failed(name, 1e-8, r)
        })
        .collect();
    let name = "oscillator-reference-value";
    let r = EvaluationPoint::new(1.0, 0.0, 0.0)
        .and_then(|p| oscillator_poisson_kernel_with(&p, param(1.0), &opts.cfg, opts.prefactor))
        .map(|k| {
            VerificationReport::new(
                name,
                relative(k.value, REFERENCE_OSCILLATOR_KERNEL),
                1e-8,
                "a=1 y=1 x=0 x'=0",
            )
        });
    out.push(or_failed(name, 1e-8, r));
    out
}

/// Step sizes of the residual convergence study.
pub const RESIDUAL_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
const ORDER_SLACK: f64 = 0.2;

pub fn residual_checks(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let a1 = param(1.0);
    let tight = opts.cfg.with_rel_tol(1e-13).unwrap_or(opts.cfg);
    let dirac_eigen = |y: f64, x: f64| Ok((-y - x).exp());
    let beta = 0.5;
    let euler_eigen = move |y: f64, xi: f64| Ok((-y * (2.0 * a1.value() * beta).sqrt()).exp() * xi.abs().powf(beta));
    let osc_eigen = move |y: f64, x: f64| Ok((-y * 3f64.sqrt()).exp() * hermite_function(1, a1, x)?);
    let fields: Vec<(Field<'_>, f64, f64)> = vec![
        (Field::DiracKernel { source: 2.0 }, 1.0, 0.0),
        (Field::EulerKernel { source: 0.4, a: a1 }, 1.0, 1.3),
        (Field::OscillatorKernel { source: 0.3, a: a1, cfg: tight }, 1.0, 0.0),
        (Field::Solution { operator: Operator::Dirac, eval: &dirac_eigen }, 1.0, 0.2),
        (Field::Solution { operator: Operator::Euler(a1), eval: &euler_eigen }, 1.0, 1.3),
        (Field::Solution { operator: Operator::Oscillator(a1), eval: &osc_eigen }, 1.0, 0.5),
    ];
    fields
        .iter()
        .map(|(f, y, c)| {
            or_failed(
                "residual-order",
                ORDER_SLACK,
                residual_order_report(f, *y, *c, &RESIDUAL_STEPS, ORDER_SLACK),
            )
        })
        .collect()
}

pub fn structure_checks(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let cfg = &opts.cfg;
    let mut out = Vec::new();
    for y in [0.1, 1.0, 10.0] {
        out.push(or_failed("dirac-unit-mass", 1e-10, dirac_unit_mass(y, cfg)));
    }

    // Euler kernel = Dirac kernel in X(ξ) divided by 2a|ξ'|.
    for a in SPECTRAL_A {
        for y in [0.5, 1.0, 2.0] {
            for (xi, xs) in [(1.0, 0.3), (2.5, 1.1), (-0.8, -0.05)] {
                let name = "euler-dirac-conjugation";
                let r = (|| {
                    let ap = param(a);
                    let e = euler_kernel(&EvaluationPoint::new(y, xi, xs)?, ap)?.value;
                    let q = EvaluationPoint::new(y, euler_coordinate(xi, ap)?, euler_coordinate(xs, ap)?)?;
                    let d = dirac_kernel(&q).value / (2.0 * a * f64::abs(xs));
                    Ok(VerificationReport::new(
                        name,
                        relative(e, d),
                        1e-10,
                        format!("a={a} y={y} xi={xi} xi'={xs}"),
                    ))
                })();
                out.push(or_failed(name, 1e-10, r));
            }
        }
    }

    for (y, x, xp) in [(1.0, 0.0, 0.3), (0.5, -1.0, 0.7), (2.0, 0.7, -0.4)] {
        let name = "oscillator-kernel-symmetry";
        let r = (|| {
            let p = EvaluationPoint::new(y, x, xp)?;
            let k1 = oscillator_poisson_kernel_with(&p, param(1.0), cfg, opts.prefactor)?;
            let k2 = oscillator_poisson_kernel_with(&p.swapped(), param(1.0), cfg, opts.prefactor)?;
            let allowed = k1.error_estimate + k2.error_estimate + 4.0 * f64::EPSILON * k1.value.abs();
            Ok(VerificationReport::new(
                name,
                (k1.value - k2.value).abs(),
                allowed,
                format!("y={y} x={x} x'={xp}"),
            ))
        })();
        out.push(or_failed(name, 0.0, r));
    }

    let tol = crate::oracles::semigroup::SEMIGROUP_TOLERANCE;
    out.push(or_failed("dirac-semigroup", tol, dirac_semigroup_gap(0.5, 1.0, 0.0, 1.5, cfg)));
    out.push(or_failed("dirac-semigroup", tol, dirac_semigroup_gap(0.2, 0.3, -1.0, 0.0, cfg)));
    out.push(or_failed(
        "euler-semigroup",
        tol,
        euler_semigroup_gap(0.5, 0.7, 2.0, 0.3, param(1.0), cfg),
    ));
    out.push(or_failed(
        "euler-semigroup",
        tol,
        euler_semigroup_gap(0.4, 0.4, -1.5, -0.2, param(0.5), cfg),
    ));
    out.push(or_failed(
        "mehler-semigroup",
        tol,
        mehler_semigroup_gap(0.3, 0.5, 0.4, -0.2, param(1.0), cfg),
    ));
    out.push(or_failed("oscillator-semigroup", tol, oscillator_semigroup(opts, 0.5, 0.5, 0.0, 0.3)));
    out.push(or_failed("oscillator-semigroup", tol, oscillator_semigroup(opts, 0.3, 0.7, -0.5, 0.6)));
    out
}

fn oscillator_semigroup(opts: &SuiteOptions, y1: f64, y2: f64, x: f64, xp: f64) -> Result<VerificationReport> {
    let kernel_cfg = opts.cfg.with_rel_tol(1e-12)?;
    oscillator_semigroup_gap_with(y1, y2, x, xp, param(1.0), &kernel_cfg, &opts.cfg, opts.prefactor)
}

/// `a → 0` limit of the oscillator kernel and boundary recovery.
pub fn limit_checks(opts: &SuiteOptions) -> Vec<VerificationReport> {
    let cfg = &opts.cfg;
    let mut out = Vec::new();
    match limit_a_to_zero_gap_with(1.0, 0.3, -0.2, &[1e-1, 1e-2, 1e-3], cfg, opts.prefactor) {
        Ok(s) => out.extend(s.reports),
        Err(e) => out.push(VerificationReport::failed("a-to-zero", 1e-2, e)),
    }

    let ys = [0.2, 0.1, 0.05];
    let a1 = param(1.0);
    let centered = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let positive = [0.5, 0.75, 1.0, 1.25, 1.5];
    let gaussian = InitialData::Gaussian { center: 0.0, width: 1.0 };
    let cases = [
        (Problem::Dirac, gaussian.clone(), &centered),
        (Problem::Euler(a1), InitialData::Gaussian { center: 1.0, width: 0.5 }, &positive),
        (Problem::Oscillator(a1), gaussian, &centered),
    ];
    for (problem, data, xs) in cases {
        match boundary_limit_gap(&problem, &data, &ys, xs, cfg) {
            Ok(s) => out.extend(s.reports.into_iter().map(|mut r| {
                r.check_name = format!("{}/{}", r.check_name, problem.name());
                r
            })),
            Err(e) => out.push(VerificationReport::failed("boundary-limit", 1.0, e)),
        }
    }

    let data = InitialData::Eigenfunction { n: 0, a: a1 };
    let name = "boundary-limit/eigen-gap";
    match boundary_limit_gap(&Problem::Oscillator(a1), &data, &ys, &centered, cfg) {
        Ok(s) => {
            // sup |w₀| = w₀(0) = 1
            for st in &s.steps {
                let want = -(-st.parameter * a1.value().sqrt()).exp_m1();
                out.push(VerificationReport::new(
                    name,
                    relative(st.gap, want),
                    1e-8,
                    format!("y={}", st.parameter),
                ));
            }
        }
        Err(e) => out.push(VerificationReport::failed(name, 1e-8, e)),
    }
    out
}

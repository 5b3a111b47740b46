//! Composite Gauss–Legendre rule over breakpoint-delimited segments.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{Estimate, QuadratureConfig, QuadratureResult};
use crate::error::{invalid, Result};

/// Nodes and weights of the `n`-point rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..(n + 1) / 2 {
            // Newton on P_n from the Tricomi initial guess.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// The 16-point rule used by [`integrate_panels`].
    pub fn standard() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Single-panel rule on `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

struct SegmentSum {
    value: f64,
    sample_error: f64,
    converged: bool,
    evaluations: usize,
}

fn composite<F>(f: &F, a: f64, b: f64, panels: usize) -> Result<SegmentSum>
where
    F: Fn(f64) -> Result<Estimate>,
{
    let rule = GaussLegendre::standard();
    let width = (b - a) / panels as f64;
    let mut out = SegmentSum {
        value: 0.0,
        sample_error: 0.0,
        converged: true,
        evaluations: 0,
    };
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let hi = if p + 1 == panels { b } else { lo + width };
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let e = f(mid + half * x)?;
            out.value += w * half * e.value;
            out.sample_error += w * half * e.error_estimate;
            out.converged &= e.converged;
            out.evaluations += 1;
        }
    }
    Ok(out)
}

/// `∫ f` over `[breakpoints[0], breakpoints.last()]`, one segment per pair of
/// consecutive breakpoints, doubling the panel count of each segment until
/// two consecutive refinements agree.
///
/// Each sample may carry its own error estimate (e.g. an inner quadrature);
/// those are integrated against the rule weights and added to the result's
/// error estimate. Any non-converged sample marks the result non-converged.
pub fn integrate_panels<F>(f: F, breakpoints: &[f64], cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Estimate>,
{
    cfg.validate()?;
    if breakpoints.iter().any(|b| !b.is_finite()) {
        return Err(invalid("breakpoints must be finite"));
    }
    if breakpoints.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("breakpoints must be non-decreasing"));
    }
    let segments: Vec<(f64, f64)> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1]))
        .collect();
    if segments.is_empty() {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
            depth: 0,
        });
    }

    let mut first = Vec::with_capacity(segments.len());
    for &(a, b) in &segments {
        first.push(composite(&f, a, b, 1)?);
    }
    let magnitude: f64 = first.iter().map(|s| s.value.abs()).sum();
    let per_segment = cfg.allowance(magnitude) / segments.len() as f64;

    let mut total = QuadratureResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
        depth: 0,
    };
    for (&(a, b), coarse) in segments.iter().zip(first) {
        let mut prev = coarse;
        total.evaluations += prev.evaluations;
        let mut panels = 1;
        let mut done = false;
        for depth in 1..=cfg.max_refinement_depth {
            panels *= 2;
            let next = composite(&f, a, b, panels)?;
            total.evaluations += next.evaluations;
            let diff = (next.value - prev.value).abs();
            prev = next;
            total.depth = total.depth.max(depth);
            if diff <= per_segment {
                total.error_estimate += diff;
                done = true;
                break;
            }
            if depth == cfg.max_refinement_depth {
                total.error_estimate += diff;
            }
        }
        total.value += prev.value;
        total.error_estimate += prev.sample_error;
        total.converged &= done && prev.converged;
    }
    Ok(total)
}

/// Adapter for plain real-valued integrands.
#[cfg(test)]
pub(crate) fn exact<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Result<Estimate> {
    move |x| Ok(Estimate::exact(f(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(16);
        let weights: f64 = rule.weights.iter().sum();
        assert!((weights - 2.0).abs() < 1e-14);
        // degree 31 is the highest exact degree
        let v = rule.integrate(0.0, 1.0, |x| x.powi(31));
        assert!((v - 1.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn odd_rule_has_zero_node() {
        let rule = GaussLegendre::new(5);
        assert!(rule.nodes[2].abs() < 1e-300);
        let v = rule.integrate(-1.0, 1.0, |x| x.powi(8));
        assert!((v - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn panels_with_kink() {
        let cfg = QuadratureConfig::default();
        let r = integrate_panels(exact(|x: f64| x.abs()), &[-1.0, 0.0, 2.0], &cfg).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.5).abs() < 1e-14);
    }

    #[test]
    fn panels_refine_oscillation() {
        let cfg = QuadratureConfig::default();
        let r = integrate_panels(exact(|x: f64| (20.0 * x).cos()), &[0.0, 3.0], &cfg).unwrap();
        let exact_value = (60.0f64).sin() / 20.0;
        assert!(r.converged);
        assert!((r.value - exact_value).abs() < 1e-12);
        assert!(r.depth >= 2);
    }

    #[test]
    fn empty_and_degenerate_segments() {
        let cfg = QuadratureConfig::default();
        let r = integrate_panels(exact(|_| 1.0), &[1.0, 1.0], &cfg).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(integrate_panels(exact(|_| 1.0), &[1.0, 0.0], &cfg).is_err());
    }
}

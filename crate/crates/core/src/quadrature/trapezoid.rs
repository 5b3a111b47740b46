use super::{LogScalar, QuadratureConfig, QuadratureResult};
use crate::error::{invalid, Error, Result};

const COARSE_STEP: f64 = 0.5;
const BISECTION_STEPS: usize = 24;
/// Hard stop for the outward walk at level zero; reached only by
/// integrands that do not decay.
const MAX_WALK: i64 = 100_000;

/// One sample of a mapped integrand: the original abscissa (for error
/// reports) and the value of `f(x(w)) x'(w)`.
struct Sample {
    abscissa: f64,
    value: LogScalar,
}

#[derive(Default)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

struct Sampler<G> {
    g: G,
    evaluations: usize,
}

impl<G: Fn(f64) -> Sample> Sampler<G> {
    fn ln_at(&mut self, w: f64) -> Result<LogScalar> {
        self.evaluations += 1;
        let s = (self.g)(w);
        if s.value.ln_abs.is_nan() || s.value.ln_abs == f64::INFINITY {
            return Err(Error::Evaluation {
                abscissa: s.abscissa,
            });
        }
        Ok(s.value)
    }
}

/// Trapezoid rule on the whole line for a mapped integrand `g(w)`, halving
/// the step until consecutive levels agree.
///
/// The node lattice is centred on the maximiser of `ln|g|`, located by a
/// coarse scan over `scan` followed by bisection on the sign of the
/// derivative. Tails are cut once `ln|g|` drops `cfg.decay_cutoff` below the
/// peak.
fn nested_trapezoid<G>(g: G, scan: (f64, f64), cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Sample,
{
    cfg.validate()?;
    let mut sampler = Sampler { g, evaluations: 0 };

    let n_scan = ((scan.1 - scan.0) / COARSE_STEP).round() as usize;
    let mut peak = (f64::NEG_INFINITY, scan.0);
    let mut scanned = Vec::with_capacity(n_scan + 1);
    for k in 0..=n_scan {
        let w = scan.0 + k as f64 * COARSE_STEP;
        let l = sampler.ln_at(w)?.ln_abs;
        scanned.push((w, l));
        if l > peak.0 {
            peak = (l, w);
        }
    }
    if peak.0 == f64::NEG_INFINITY {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: sampler.evaluations,
            converged: true,
            depth: 0,
        });
    }

    let center = refine_peak(&mut sampler, peak.1)?;
    let mut ln_peak = peak.0.max(sampler.ln_at(center)?.ln_abs);
    let floor = |lp: f64| lp - cfg.decay_cutoff;
    let significant: Vec<f64> = scanned
        .iter()
        .filter(|(_, l)| *l >= floor(ln_peak))
        .map(|(w, _)| *w)
        .collect();
    let sig_lo = significant.first().copied().unwrap_or(center);
    let sig_hi = significant.last().copied().unwrap_or(center);

    // Level 0: walk outwards until both tails are below the cutoff.
    let mut level0: Vec<(i64, LogScalar)> = vec![(0, sampler.ln_at(center)?)];
    for dir in [1i64, -1] {
        let mut j = dir;
        loop {
            if j.abs() > MAX_WALK {
                return Err(invalid("integrand does not decay along the mapped axis"));
            }
            let w = center + j as f64 * COARSE_STEP;
            let v = sampler.ln_at(w)?;
            level0.push((j, v));
            ln_peak = ln_peak.max(v.ln_abs);
            let beyond_scan = if dir > 0 { w > sig_hi } else { w < sig_lo };
            if beyond_scan && v.ln_abs < floor(ln_peak) {
                break;
            }
            j += dir;
        }
    }
    let j_lo = level0.iter().map(|(j, _)| *j).min().unwrap_or(0);
    let j_hi = level0.iter().map(|(j, _)| *j).max().unwrap_or(0);

    let mut acc = NeumaierSum::default();
    for (_, v) in &level0 {
        acc.add(v.relative_to(ln_peak));
    }
    let edge = |vs: &[(i64, LogScalar)], j: i64| {
        vs.iter()
            .find(|(k, _)| *k == j)
            .map(|(_, v)| v.relative_to(ln_peak).abs())
            .unwrap_or(0.0)
    };
    let truncation = COARSE_STEP * (edge(&level0, j_lo) + edge(&level0, j_hi));

    let mut h = COARSE_STEP;
    let mut scaled = h * acc.total();
    let scale = ln_peak.exp();
    let mut result = QuadratureResult {
        value: scaled * scale,
        error_estimate: f64::INFINITY,
        evaluations: 0,
        converged: false,
        depth: 0,
    };

    let w_lo = center + j_lo as f64 * COARSE_STEP;
    let n_base = (j_hi - j_lo) as usize;
    for depth in 1..=cfg.max_refinement_depth {
        h *= 0.5;
        let n_new = n_base << (depth - 1);
        let mut fresh = NeumaierSum::default();
        for i in 0..n_new {
            let w = w_lo + (2 * i + 1) as f64 * h;
            fresh.add(sampler.ln_at(w)?.relative_to(ln_peak));
        }
        let next = 0.5 * scaled + h * fresh.total();
        let err_scaled = (next - scaled).abs() + truncation;
        scaled = next;

        let value = scaled * scale;
        let error_estimate = err_scaled * scale;
        // Compare in scaled units so a vanishing `scale` cannot hide the test.
        let allowed = (cfg.abs_tol / scale).max(cfg.rel_tol * scaled.abs());
        result = QuadratureResult {
            value,
            error_estimate,
            evaluations: sampler.evaluations,
            converged: false,
            depth,
        };
        if depth >= cfg.min_refinement_depth && err_scaled <= allowed {
            result.converged = true;
            break;
        }
    }
    result.evaluations = sampler.evaluations;
    Ok(result)
}

/// Bisection on the sign of `d ln|g| / dw` inside the coarse cell around
/// `w0`. Falls back to `w0` when the cell does not bracket a maximum.
fn refine_peak<G: Fn(f64) -> Sample>(sampler: &mut Sampler<G>, w0: f64) -> Result<f64> {
    const DELTA: f64 = 1e-4;
    let mut slope = |w: f64| -> Result<f64> {
        Ok(sampler.ln_at(w + DELTA)?.ln_abs - sampler.ln_at(w - DELTA)?.ln_abs)
    };
    let (mut lo, mut hi) = (w0 - COARSE_STEP, w0 + COARSE_STEP);
    let (s_lo, s_hi) = (slope(lo)?, slope(hi)?);
    if !(s_lo > 0.0 && s_hi < 0.0) {
        return Ok(w0);
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let s = slope(mid)?;
        if s.is_nan() {
            return Ok(w0);
        }
        if s > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `∫₀^∞ f(u) du` for an integrand given as `(sign, ln|f|)`.
///
/// Uses `u = e^w`, which turns `u^p e^{-c/u}` behaviour at the origin and
/// exponential decay at infinity into doubly exponential decay in `w`. The
/// coarse scan covers `u ∈ [e^{-60}, e^{60}]`.
pub fn integrate_semi_infinite<F>(f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> LogScalar,
{
    nested_trapezoid(
        |w| {
            let u = w.exp();
            let v = if u > 0.0 && u.is_finite() {
                f(u).shifted(w)
            } else {
                LogScalar::ZERO
            };
            Sample {
                abscissa: u,
                value: v,
            }
        },
        (-60.0, 60.0),
        cfg,
    )
}

/// `∫_{-∞}^{∞} f(z) dz` via `z = center + scale·sinh(w)`.
pub fn integrate_real_line<F>(
    f: F,
    center: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(scale > 0.0 && scale.is_finite() && center.is_finite()) {
        return Err(invalid("real-line map needs finite center and positive scale"));
    }
    let ln_scale = scale.ln();
    nested_trapezoid(
        |w| {
            let z = center + scale * w.sinh();
            let aw = w.abs();
            let ln_cosh = aw + (-2.0 * aw).exp().ln_1p() - std::f64::consts::LN_2;
            let v = if z.is_finite() {
                LogScalar::from_value(f(z)).shifted(ln_scale + ln_cosh)
            } else {
                LogScalar::ZERO
            };
            Sample {
                abscissa: z,
                value: v,
            }
        },
        (-40.0, 40.0),
        cfg,
    )
}

/// `∫_lo^hi f dz` via the logistic map, which clusters nodes doubly
/// exponentially at both ends.
///
/// The integrand receives the distances to the two endpoints, `(z - lo,
/// hi - z)`, each computed without cancellation.
pub fn integrate_interval<F>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(invalid(format!("invalid interval [{lo}, {hi}]")));
    }
    let len = hi - lo;
    let ln_len = len.ln();
    // ln σ(w) = -ln(1 + e^{-w}), written to avoid overflow for either sign.
    let ln_sigmoid = |w: f64| {
        if w >= 0.0 {
            -(-w).exp().ln_1p()
        } else {
            w - w.exp().ln_1p()
        }
    };
    nested_trapezoid(
        |w| {
            let (ls, lsm) = (ln_sigmoid(w), ln_sigmoid(-w));
            let d_lo = len * ls.exp();
            let d_hi = len * lsm.exp();
            Sample {
                abscissa: lo + d_lo,
                value: LogScalar::from_value(f(d_lo, d_hi)).shifted(ln_len + ls + lsm),
            }
        },
        (-40.0, 40.0),
        cfg,
    )
}

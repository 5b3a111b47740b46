use std::f64::consts::PI;

use super::spline::CubicSpline;
use crate::error::{Error, Result};
use crate::kernels::OscillatorParam;
use crate::oracles::hermite_function;

/// Which extension problem is being solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Problem {
    /// `(∂/∂X + ∂²/∂y²) u = 0`
    Dirac,
    /// `(-2aξ ∂/∂ξ + ∂²/∂y²) v = 0`
    Euler(OscillatorParam),
    /// `(∂²/∂x² - a²x² + ∂²/∂y²) w = 0`
    Oscillator(OscillatorParam),
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Dirac => "dirac",
            Problem::Euler(_) => "euler",
            Problem::Oscillator(_) => "oscillator",
        }
    }
}

/// Boundary datum at `y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// `exp(-(x-c)²/(2w²))`
    Gaussian { center: f64, width: f64 },
    /// `exp(1 - 1/(1-r²))` for `r = (x-c)/radius` inside the unit ball, zero
    /// outside.
    Bump { center: f64, radius: f64 },
    /// `e^{-cx}`; needs `c > 0` under the Dirac kernel's `X' → ∞` tail.
    Exponential { rate: f64 },
    /// `|x|^β`; Euler problem only, with `β ≥ 0`.
    Power { exponent: f64 },
    /// `e^{-ax²/2}·Hₙ(√a·x)/√(2ⁿn!)`, the oscillator eigenfunction `φₙ`
    /// rescaled so the ground state is exactly `e^{-ax²/2}`.
    Eigenfunction { n: usize, a: OscillatorParam },
    /// Natural cubic spline through the samples, zero outside the grid.
    Sampled(CubicSpline),
}

/// Where the datum is non-negligible: values outside `[lo, hi]` are below
/// `e^{-45}` of the peak (exactly zero for compact data). Infinite ends mean
/// the datum does not decay there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lo: f64,
    pub hi: f64,
}

/// `e^{-z²/2} < e^{-45}` beyond this many widths.
const GAUSSIAN_REACH: f64 = 9.5;

impl InitialData {
    pub fn sampled(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Ok(InitialData::Sampled(CubicSpline::new(grid, values)?))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidData(msg));
        match *self {
            InitialData::Gaussian { center, width } => {
                if !center.is_finite() || !(width > 0.0 && width.is_finite()) {
                    return bad(format!("gaussian needs finite center and width > 0, got ({center}, {width})"));
                }
            }
            InitialData::Bump { center, radius } => {
                if !center.is_finite() || !(radius > 0.0 && radius.is_finite()) {
                    return bad(format!("bump needs finite center and radius > 0, got ({center}, {radius})"));
                }
            }
            InitialData::Exponential { rate } => {
                if !rate.is_finite() {
                    return bad(format!("exponential rate must be finite, got {rate}"));
                }
            }
            InitialData::Power { exponent } => {
                if !exponent.is_finite() {
                    return bad(format!("power exponent must be finite, got {exponent}"));
                }
            }
            InitialData::Eigenfunction { .. } | InitialData::Sampled(_) => {}
        }
        Ok(())
    }

    /// Checks that the datum is integrable against the problem's kernel.
    pub fn admissible(&self, problem: &Problem) -> Result<()> {
        self.validate()?;
        let reject = |why: &str| {
            Err(Error::InvalidData(format!(
                "{} data not admissible for the {} problem: {why}",
                self.kind(),
                problem.name()
            )))
        };
        match (problem, self) {
            (Problem::Dirac, InitialData::Exponential { rate }) if *rate <= 0.0 => {
                reject("rate must be positive for the X' -> infinity tail")
            }
            (Problem::Dirac, InitialData::Power { .. }) => reject("|X|^beta is not integrable against the tail"),
            (Problem::Euler(_), InitialData::Power { exponent }) if *exponent < 0.0 => {
                reject("exponent must be >= 0 near xi = 0")
            }
            (Problem::Oscillator(_), InitialData::Exponential { .. } | InitialData::Power { .. }) => {
                reject("only decaying presets are supported on the whole line")
            }
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InitialData::Gaussian { .. } => "gaussian",
            InitialData::Bump { .. } => "bump",
            InitialData::Exponential { .. } => "exponential",
            InitialData::Power { .. } => "power",
            InitialData::Eigenfunction { .. } => "eigenfunction",
            InitialData::Sampled(_) => "sampled",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            InitialData::Gaussian { center, width } => {
                let z = (x - center) / width;
                (-0.5 * z * z).exp()
            }
            InitialData::Bump { center, radius } => {
                let r = (x - center) / radius;
                let q = 1.0 - r * r;
                if q <= 0.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / q).exp()
                }
            }
            InitialData::Exponential { rate } => (-rate * x).exp(),
            InitialData::Power { exponent } => x.abs().powf(*exponent),
            InitialData::Eigenfunction { n, a } => {
                let scale = (PI / a.value()).powf(0.25);
                // finite x cannot fail
                scale * hermite_function(*n, *a, x).unwrap_or(0.0)
            }
            InitialData::Sampled(s) => s.eval(x),
        }
    }

    pub fn support(&self) -> Support {
        match self {
            InitialData::Gaussian { center, width } => Support {
                lo: center - GAUSSIAN_REACH * width,
                hi: center + GAUSSIAN_REACH * width,
            },
            InitialData::Bump { center, radius } => Support {
                lo: center - radius,
                hi: center + radius,
            },
            InitialData::Eigenfunction { n, a } => {
                let reach = ((2 * n + 1) as f64).sqrt() + GAUSSIAN_REACH;
                let r = reach / a.value().sqrt();
                Support { lo: -r, hi: r }
            }
            InitialData::Sampled(s) => Support {
                lo: s.nodes()[0],
                hi: *s.nodes().last().expect("at least 4 nodes"),
            },
            InitialData::Exponential { .. } | InitialData::Power { .. } => Support {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
        }
    }

    /// Points where the datum is not smooth or changes character.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            InitialData::Gaussian { center, .. } => vec![*center],
            InitialData::Bump { center, radius } => vec![center - radius, *center, center + radius],
            InitialData::Power { .. } | InitialData::Eigenfunction { .. } => vec![0.0],
            InitialData::Exponential { .. } => vec![],
            InitialData::Sampled(s) => s.nodes().to_vec(),
        }
    }

    /// Bound on `|data|` over the real line, where one exists.
    pub fn sup_norm(&self) -> Option<f64> {
        match self {
            InitialData::Gaussian { .. } | InitialData::Bump { .. } => Some(1.0),
            InitialData::Sampled(s) => {
                // The spline can overshoot the samples; probe each interval.
                let nodes = s.nodes();
                let mut m = 0.0f64;
                for w in nodes.windows(2) {
                    for k in 0..=16 {
                        let x = w[0] + (w[1] - w[0]) * k as f64 / 16.0;
                        m = m.max(s.eval(x).abs());
                    }
                }
                Some(m)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> OscillatorParam {
        OscillatorParam::new(v).unwrap()
    }

    #[test]
    fn eigen_datum_normalisation() {
        let d = InitialData::Eigenfunction { n: 0, a: a(1.7) };
        for x in [0.0, 0.4, -1.3] {
            assert!((d.eval(x) - (-0.85 * x * x).exp()).abs() < 1e-15);
        }
        let d = InitialData::Eigenfunction { n: 1, a: a(1.0) };
        assert!((d.eval(0.5) - 0.5 * 2f64.sqrt() * (-0.125f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn bump_is_compact() {
        let d = InitialData::Bump { center: 1.0, radius: 0.5 };
        assert_eq!(d.eval(1.0), 1.0);
        assert_eq!(d.eval(1.6), 0.0);
        assert_eq!(d.eval(0.5), 0.0);
        assert!(d.eval(1.49) > 0.0);
    }

    #[test]
    fn admissibility_rules() {
        let exp = InitialData::Exponential { rate: -1.0 };
        assert!(exp.admissible(&Problem::Dirac).is_err());
        assert!(exp.admissible(&Problem::Euler(a(1.0))).is_ok());
        let pow = InitialData::Power { exponent: 0.5 };
        assert!(pow.admissible(&Problem::Dirac).is_err());
        assert!(pow.admissible(&Problem::Euler(a(1.0))).is_ok());
        assert!(pow.admissible(&Problem::Oscillator(a(1.0))).is_err());
        let g = InitialData::Gaussian { center: 0.0, width: 0.0 };
        assert!(matches!(g.admissible(&Problem::Dirac), Err(Error::InvalidData(_))));
    }
}

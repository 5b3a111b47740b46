//! Quadrature for the improper integrals behind the kernels and solvers.
//!
//! The workhorse is a nested trapezoid rule on the whole real line applied
//! after a smooth change of variables ([`integrate_semi_infinite`],
//! [`integrate_real_line`], [`integrate_interval`]). For integrands that are
//! analytic in a strip around the mapped axis and decay at both ends, the
//! rule converges geometrically in the number of halvings, so the difference
//! between consecutive levels is a safe (pessimistic) error estimate.
//!
//! Piecewise-smooth integrands, such as spline data, go through the
//! composite Gauss–Legendre rule in [`gauss_legendre`].

pub mod gauss_legendre;
mod subordination;
mod trapezoid;

pub use gauss_legendre::{integrate_panels, GaussLegendre};
pub use subordination::{subordination_base_residual, subordination_derived_residual};
pub use trapezoid::{integrate_interval, integrate_real_line, integrate_semi_infinite};

use crate::error::{invalid, Result};

/// Tolerance contract for every adaptive rule in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Number of interval halvings (trapezoid) or panel doublings
    /// (Gauss–Legendre) allowed before giving up.
    pub max_refinement_depth: u32,
    /// Refinements always performed before the convergence test is trusted.
    pub min_refinement_depth: u32,
    /// Natural-log drop below the running peak at which a tail is truncated.
    pub decay_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_refinement_depth: 20,
            min_refinement_depth: 3,
            decay_cutoff: 45.0,
        }
    }
}

impl QuadratureConfig {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Result<Self> {
        let cfg = QuadratureConfig {
            rel_tol,
            abs_tol,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Result<Self> {
        self.rel_tol = rel_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(invalid(format!("{name} must lie in (0, 1), got {v}")))
            }
        };
        unit("rel_tol", self.rel_tol)?;
        unit("abs_tol", self.abs_tol)?;
        if self.max_refinement_depth == 0 || self.max_refinement_depth > 60 {
            return Err(invalid(format!(
                "max_refinement_depth must lie in 1..=60, got {}",
                self.max_refinement_depth
            )));
        }
        if self.min_refinement_depth > self.max_refinement_depth {
            return Err(invalid("min_refinement_depth exceeds max_refinement_depth"));
        }
        if !(self.decay_cutoff > 0.0 && self.decay_cutoff.is_finite()) {
            return Err(invalid(format!(
                "decay_cutoff must be positive, got {}",
                self.decay_cutoff
            )));
        }
        Ok(())
    }

    /// The absolute error allowed for a result of magnitude `value`.
    pub fn allowance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Refinement level at which the rule stopped.
    pub depth: u32,
}

impl QuadratureResult {
    pub fn estimate(&self) -> Estimate {
        Estimate {
            value: self.value,
            error_estimate: self.error_estimate,
            converged: self.converged,
        }
    }
}

/// A value together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

impl Estimate {
    /// A closed-form value, exact up to rounding.
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            error_estimate: 0.0,
            converged: true,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Estimate {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            converged: self.converged,
        }
    }
}

/// A signed real stored as `(sign, ln|v|)`, so integrands can be sampled far
/// outside the range of `f64` and rescaled before summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScalar {
    pub negative: bool,
    pub ln_abs: f64,
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar {
        negative: false,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn positive(ln_abs: f64) -> Self {
        LogScalar {
            negative: false,
            ln_abs,
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v.is_nan() {
            return LogScalar::positive(f64::NAN);
        }
        LogScalar {
            negative: v < 0.0,
            ln_abs: v.abs().ln(),
        }
    }

    pub fn value(self) -> f64 {
        let m = self.ln_abs.exp();
        if self.negative {
            -m
        } else {
            m
        }
    }

    /// Multiply by `e^shift`.
    pub fn shifted(self, shift: f64) -> Self {
        LogScalar {
            negative: self.negative,
            ln_abs: self.ln_abs + shift,
        }
    }

    /// `self * e^{-reference}` as a plain float.
    pub(crate) fn relative_to(self, reference: f64) -> f64 {
        if self.ln_abs == f64::NEG_INFINITY {
            return 0.0;
        }
        let m = (self.ln_abs - reference).exp();
        if self.negative {
            -m
        } else {
            m
        }
    }
}

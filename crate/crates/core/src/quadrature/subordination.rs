//! Residual checks of the scalar subordination identities
//!
//! ```text
//! e^{-tλ}/t = (1/√π)     ∫₀^∞ e^{-ut²} u^{-1/2}  e^{-λ²/(4u)} du
//! e^{-tλ}   = (1/(2√π))  ∫₀^∞ e^{-ut²} u^{-3/2} λ e^{-λ²/(4u)} du
//! ```
//!
//! The second follows from the first by differentiating in λ.

use std::f64::consts::PI;

use super::{integrate_semi_infinite, LogScalar, QuadratureConfig};
use crate::error::{ensure_positive, Error, Result};

fn converged_value(r: super::QuadratureResult) -> Result<f64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NotConverged {
            value: r.value,
            error_estimate: r.error_estimate,
        })
    }
}

/// Relative residual of the base identity at `(t, λ)`.
pub fn subordination_base_residual(t: f64, lambda: f64, cfg: &QuadratureConfig) -> Result<f64> {
    ensure_positive("t", t)?;
    ensure_positive("lambda", lambda)?;
    let c = -0.5 * PI.ln();
    let q = lambda * lambda / 4.0;
    let r = integrate_semi_infinite(
        |u| LogScalar::positive(c - u * t * t - 0.5 * u.ln() - q / u),
        cfg,
    )?;
    let lhs = (-t * lambda).exp() / t;
    Ok((lhs - converged_value(r)?).abs() / lhs)
}

/// Relative residual of the λ-differentiated identity at `(t, λ)`.
pub fn subordination_derived_residual(t: f64, lambda: f64, cfg: &QuadratureConfig) -> Result<f64> {
    ensure_positive("t", t)?;
    ensure_positive("lambda", lambda)?;
    let c = lambda.ln() - (2.0 * PI.sqrt()).ln();
    let q = lambda * lambda / 4.0;
    let r = integrate_semi_infinite(
        |u| LogScalar::positive(c - u * t * t - 1.5 * u.ln() - q / u),
        cfg,
    )?;
    let lhs = (-t * lambda).exp();
    Ok((lhs - converged_value(r)?).abs() / lhs)
}

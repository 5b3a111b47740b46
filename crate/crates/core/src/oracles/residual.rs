//! Central-difference residuals of `(Op + ∂²/∂y²) f` for the kernels and for
//! arbitrary solution fields.

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::kernels::{
    dirac_kernel, euler_kernel, oscillator_poisson_kernel, EvaluationPoint, OscillatorParam,
};
use crate::quadrature::QuadratureConfig;

use super::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilConfig {
    pub h_y: f64,
    pub h_x: f64,
}

impl StencilConfig {
    pub fn new(h_y: f64, h_x: f64) -> Result<Self> {
        for (name, h) in [("h_y", h_y), ("h_x", h_x)] {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::InvalidStencil(format!("{name} must be positive, got {h}")));
            }
        }
        Ok(StencilConfig { h_y, h_x })
    }

    pub fn uniform(h: f64) -> Result<Self> {
        Self::new(h, h)
    }
}

/// The boundary operator `Op` of the extension problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operator {
    /// `∂/∂X`
    Dirac,
    /// `-2aξ ∂/∂ξ`
    Euler(OscillatorParam),
    /// `∂²/∂x² - a²x²`
    Oscillator(OscillatorParam),
}

/// A function of `(y, coordinate)` to be checked against its equation.
pub enum Field<'a> {
    DiracKernel { source: f64 },
    EulerKernel { source: f64, a: OscillatorParam },
    OscillatorKernel { source: f64, a: OscillatorParam, cfg: QuadratureConfig },
    Solution {
        operator: Operator,
        eval: &'a (dyn Fn(f64, f64) -> Result<f64> + Sync),
    },
}

impl Field<'_> {
    pub fn operator(&self) -> Operator {
        match self {
            Field::DiracKernel { .. } => Operator::Dirac,
            Field::EulerKernel { a, .. } => Operator::Euler(*a),
            Field::OscillatorKernel { a, .. } => Operator::Oscillator(*a),
            Field::Solution { operator, .. } => *operator,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Field::DiracKernel { .. } => "dirac-kernel",
            Field::EulerKernel { .. } => "euler-kernel",
            Field::OscillatorKernel { .. } => "oscillator-kernel",
            Field::Solution { .. } => "solution",
        }
    }

    pub fn eval(&self, y: f64, coord: f64) -> Result<f64> {
        match self {
            Field::DiracKernel { source } => {
                Ok(dirac_kernel(&EvaluationPoint::new(y, coord, *source)?).value)
            }
            Field::EulerKernel { source, a } => {
                Ok(euler_kernel(&EvaluationPoint::new(y, coord, *source)?, *a)?.value)
            }
            Field::OscillatorKernel { source, a, cfg } => {
                let k = oscillator_poisson_kernel(&EvaluationPoint::new(y, coord, *source)?, *a, cfg)?;
                if k.converged {
                    Ok(k.value)
                } else {
                    Err(Error::NotConverged {
                        value: k.value,
                        error_estimate: k.error_estimate,
                    })
                }
            }
            Field::Solution { eval, .. } => eval(y, coord),
        }
    }
}

/// `|(Op + ∂²/∂y²) f| / (max |f| on the stencil + ε)` by second-order central
/// differences.
pub fn relative_residual(field: &Field<'_>, y: f64, coord: f64, st: &StencilConfig) -> Result<f64> {
    ensure_positive("y", y)?;
    ensure_finite("coordinate", coord)?;
    let (hy, hx) = (st.h_y, st.h_x);
    if hy > y / 4.0 {
        return Err(Error::InvalidStencil(format!(
            "h_y = {hy} reaches too close to the boundary at y = {y}"
        )));
    }
    let op = field.operator();
    if let Operator::Euler(_) = op {
        if coord.abs() <= 2.0 * hx {
            return Err(Error::InvalidStencil(format!(
                "h_x = {hx} straddles the characteristic xi = 0 from {coord}"
            )));
        }
    }
    let f = |y: f64, c: f64| field.eval(y, c);
    let center = f(y, coord)?;
    let (up, down) = (f(y + hy, coord)?, f(y - hy, coord)?);
    let (right, left) = (f(y, coord + hx)?, f(y, coord - hx)?);
    let f_yy = (up - 2.0 * center + down) / (hy * hy);
    let op_f = match op {
        Operator::Dirac => (right - left) / (2.0 * hx),
        Operator::Euler(a) => -2.0 * a.value() * coord * (right - left) / (2.0 * hx),
        Operator::Oscillator(a) => {
            let av = a.value();
            (right - 2.0 * center + left) / (hx * hx) - av * av * coord * coord * center
        }
    };
    let scale = [center, up, down, right, left]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    Ok((op_f + f_yy).abs() / (scale + f64::EPSILON))
}

/// [`relative_residual`] judged against `tolerance`.
pub fn pde_residual(
    field: &Field<'_>,
    y: f64,
    coord: f64,
    st: &StencilConfig,
    tolerance: f64,
) -> Result<VerificationReport> {
    let r = relative_residual(field, y, coord, st)?;
    Ok(VerificationReport::new(
        format!("pde-residual/{}", field.name()),
        r,
        tolerance,
        format!("y={y} coord={coord} h_y={} h_x={}", st.h_y, st.h_x),
    ))
}

/// Residuals on a sequence of uniform steps and the observed orders
/// `log(r_k / r_{k+1}) / log(h_k / h_{k+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualStudy {
    pub steps: Vec<f64>,
    pub residuals: Vec<f64>,
    pub orders: Vec<f64>,
}

pub fn residual_convergence(field: &Field<'_>, y: f64, coord: f64, steps: &[f64]) -> Result<ResidualStudy> {
    if steps.len() < 2 {
        return Err(Error::InvalidStencil("at least two step sizes are needed".into()));
    }
    let residuals = steps
        .iter()
        .map(|&h| relative_residual(field, y, coord, &StencilConfig::uniform(h)?))
        .collect::<Result<Vec<_>>>()?;
    let orders = steps
        .windows(2)
        .zip(residuals.windows(2))
        .map(|(h, r)| (r[0] / r[1]).ln() / (h[0] / h[1]).ln())
        .collect();
    Ok(ResidualStudy {
        steps: steps.to_vec(),
        residuals,
        orders,
    })
}

/// Passes when every observed order is within `slack` of 2.
pub fn residual_order_report(
    field: &Field<'_>,
    y: f64,
    coord: f64,
    steps: &[f64],
    slack: f64,
) -> Result<VerificationReport> {
    let study = residual_convergence(field, y, coord, steps)?;
    let worst = study
        .orders
        .iter()
        .map(|p| (p - 2.0).abs())
        .fold(0.0f64, |m, d| if d.is_nan() { f64::NAN } else { m.max(d) });
    Ok(VerificationReport::new(
        format!("residual-order/{}", field.name()),
        worst,
        slack,
        format!("y={y} coord={coord} orders={:?}", study.orders),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> OscillatorParam {
        OscillatorParam::new(v).unwrap()
    }

    const STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

    #[test]
    fn dirac_kernel_residual_is_small() {
        let f = Field::DiracKernel { source: 2.0 };
        let r = pde_residual(&f, 1.0, 0.0, &StencilConfig::uniform(1e-3).unwrap(), 1e-5).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn dirac_kernel_converges_at_second_order() {
        let f = Field::DiracKernel { source: 2.0 };
        let study = residual_convergence(&f, 1.0, 0.0, &STEPS).unwrap();
        for p in &study.orders {
            assert!((p - 2.0).abs() < 0.2, "{study:?}");
        }
    }

    #[test]
    fn euler_and_oscillator_kernels_converge_at_second_order() {
        let f = Field::EulerKernel { source: 0.4, a: a(1.0) };
        let r = residual_order_report(&f, 1.0, 1.3, &STEPS, 0.2).unwrap();
        assert!(r.passed, "{r}");
        let cfg = QuadratureConfig::default().with_rel_tol(1e-13).unwrap();
        let f = Field::OscillatorKernel { source: 0.3, a: a(1.0), cfg };
        let r = residual_order_report(&f, 1.0, 0.0, &STEPS, 0.2).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn constant_field_has_no_residual() {
        let one = |_: f64, _: f64| Ok(1.0);
        let f = Field::Solution { operator: Operator::Dirac, eval: &one };
        let r = relative_residual(&f, 1.0, 0.0, &StencilConfig::uniform(1e-2).unwrap()).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn eigen_solutions_satisfy_their_equations() {
        let c = 1.5f64;
        let u = move |y: f64, x: f64| Ok((-y * c.sqrt() - c * x).exp());
        let f = Field::Solution { operator: Operator::Dirac, eval: &u };
        assert!(residual_order_report(&f, 1.0, 0.2, &STEPS, 0.2).unwrap().passed);
        // a non-solution is caught
        let bad = |y: f64, x: f64| Ok((-y - 2.0 * x).exp());
        let f = Field::Solution { operator: Operator::Dirac, eval: &bad };
        let st = StencilConfig::uniform(1e-3).unwrap();
        assert!(relative_residual(&f, 1.0, 0.2, &st).unwrap() > 0.5);
    }

    #[test]
    fn stencil_touching_boundary_is_rejected() {
        let f = Field::DiracKernel { source: 2.0 };
        let st = StencilConfig::uniform(0.3).unwrap();
        assert!(matches!(relative_residual(&f, 1.0, 0.0, &st), Err(Error::InvalidStencil(_))));
        let f = Field::EulerKernel { source: 0.01, a: a(1.0) };
        let st = StencilConfig::uniform(0.1).unwrap();
        assert!(matches!(relative_residual(&f, 1.0, 0.15, &st), Err(Error::InvalidStencil(_))));
        assert!(StencilConfig::new(0.0, 1.0).is_err());
    }
}

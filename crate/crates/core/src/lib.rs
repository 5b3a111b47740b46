//! Poisson-type kernels and solution operators for the Laplace extension
//! problems `(Op + ∂²/∂y²) u = 0`, `u(0, ·) = u₀`, on the half-plane `y > 0`,
//! where `Op` is the first-order operator `∂/∂X`, the Euler operator
//! `-2aξ ∂/∂ξ` or the harmonic oscillator `∂²/∂x² - a²x²` on the real line.
//!
//! * [`kernels`]: closed-form and quadrature-based kernel evaluation.
//! * [`quadrature`]: adaptive rules for the singular improper integrals.
//! * [`solvers`]: the solution operators applied to boundary data.
//! * [`oracles`]: independent checks (Hermite spectral sums, finite-difference
//!   residuals, limit studies).
//! * [`suites`]: named verification suites built on the oracles.

pub mod error;
pub mod kernels;
pub mod oracles;
pub mod quadrature;
pub mod solvers;
pub mod suites;

pub use error::{Error, Result};
pub use kernels::{
    dirac_kernel, euler_kernel, halfplane_poisson_kernel, mehler_heat_kernel,
    oscillator_poisson_kernel, EvaluationPoint, KernelValue, OscillatorParam, Prefactor,
};
pub use quadrature::{Estimate, QuadratureConfig, QuadratureResult};

//! Independent checks: spectral sums, finite-difference residuals, limit and
//! semigroup studies.

mod ddouble;
pub mod hermite;
pub mod limits;
mod report;
pub mod residual;
pub mod semigroup;
pub mod spectral;

pub use limits::{
    boundary_limit_gap, limit_a_to_zero_gap, limit_a_to_zero_gap_with, mehler_limit_gap, LimitStep,
    LimitStudy,
};
pub use report::VerificationReport;
pub use residual::{
    pde_residual, relative_residual, residual_convergence, residual_order_report, Field, Operator,
    ResidualStudy, StencilConfig,
};
pub use hermite::{hermite_function, hermite_functions, HERMITE_SUP_BOUND};
pub use spectral::{
    heat_tail_bound, poisson_tail_bound, spectral_heat_kernel, spectral_poisson_kernel,
    SpectralConfig,
};

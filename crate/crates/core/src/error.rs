use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The Euler operator degenerates on the characteristic ξ = 0.
    #[error("degenerate characteristic: coordinate {coordinate} lies on xi = 0")]
    DegenerateCharacteristic { coordinate: f64 },

    #[error("non-finite integrand sample at abscissa {abscissa}")]
    Evaluation { abscissa: f64 },

    #[error("quadrature did not converge: value {value}, error estimate {error_estimate}")]
    NotConverged { value: f64, error_estimate: f64 },

    #[error("invalid boundary data: {0}")]
    InvalidData(String),

    #[error("spectral truncation n_max = {n_max} too low: tail bound {tail_bound:e} exceeds {tolerance:e}")]
    InsufficientOrder {
        n_max: usize,
        tail_bound: f64,
        tolerance: f64,
    },

    #[error("invalid stencil: {0}")]
    InvalidStencil(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn ensure_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite, got {v}")))
    }
}

pub(crate) fn ensure_positive(name: &str, v: f64) -> Result<()> {
    ensure_finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive, got {v}")))
    }
}

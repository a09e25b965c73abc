use thiserror::Error;

/// Errors raised by the numerical layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A tabulated model was queried outside its sample range and has no
    /// extrapolation rule that covers the request.
    #[error("{what} evaluated at {value:e}, outside tabulated range [{min:e}, {max:e}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    /// Input data or arguments violate a documented invariant.
    #[error("invalid input: {0}")]
    Invalid(&'static str),
    /// The adaptive integrator exhausted its subdivision budget.
    #[error("quadrature did not converge: estimate {value:e}, error {error:e} (requested rel. {requested:e})")]
    NonConvergence {
        value: f64,
        error: f64,
        requested: f64,
    },
    /// A dispersion integral diverges (typically the static limit of a metal).
    #[error("dispersion integral diverges: {0}")]
    Divergent(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

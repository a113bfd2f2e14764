use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The root finder was given an interval without a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// A quadrature or iteration stopped before reaching the requested accuracy.
    #[error("{what}: achieved error {achieved:e} exceeds requested {requested:e}")]
    Accuracy { what: &'static str, achieved: f64, requested: f64 },

    /// The Hamiltonian drift along an integrated trajectory exceeded its bound.
    #[error("integrator accuracy: relative energy drift {drift:e} exceeds bound {bound:e}")]
    IntegratorAccuracy { drift: f64, bound: f64 },

    /// The operation needs a radial or axisymmetric field.
    #[error("unsupported symmetry: {0}")]
    UnsupportedSymmetry(String),

    /// A finite-difference stencil could not be placed at the requested point.
    #[error("stencil error: {0}")]
    Stencil(String),

    /// A documented precondition of the operation was detected to fail.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The maximizer search ended on the boundary of its domain.
    #[error("search failure: {0}")]
    SearchFailure(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of subdivisions before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: achieved error estimate {achieved:e}, requested {requested:e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    /// A closed-form radicand went negative beyond tolerance; signals an
    /// implementation or regime bug, not a user error.
    #[error("numeric domain violation: {0}")]
    Numeric(String),

    /// The nested-sum evaluation path was requested in a regime where the
    /// alternating factorial terms cancel catastrophically.
    #[error("nested-sum path rejected: {0}")]
    SumsUnstable(String),
}

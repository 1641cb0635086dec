use thiserror::Error;

/// Errors produced by the estimation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error(
        "quadrature did not converge: estimated error {estimated_error:e} exceeds \
         tolerance {tolerance:e} after {subdivisions} subdivisions"
    )]
    QuadratureNonConvergence {
        estimated_error: f64,
        tolerance: f64,
        subdivisions: usize,
    },

    /// Root finding for a distribution quantile failed to bracket or converge.
    #[error("quantile inversion failed for p = {p}: {reason}")]
    QuantileInversion { p: f64, reason: String },

    /// A simulation replicate failed; the cell was aborted.
    #[error("replicate {index} failed: {source}")]
    Replicate {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A curve parameter was outside the unit interval.
    #[error("curve parameter {t} lies outside [0, 1]")]
    ParamOutOfRange { t: f64 },

    /// The parametric speed vanishes, so tangent/curvature are undefined.
    #[error("parametric speed vanishes near t = {t} (cusp)")]
    Cusp { t: f64 },

    /// All four preimage coefficients are zero; the curve degenerates to a point.
    #[error("degenerate preimage: all coefficients are zero")]
    DegeneratePreimage,

    /// Input data cannot be interpolated (violates a feasibility condition).
    #[error("infeasible data: {reason}")]
    Infeasible { reason: String },

    /// A data field failed validation.
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },

    /// An iterative solve did not converge.
    #[error("solver failed to converge: {reason}")]
    NoConvergence { reason: String },

    /// A spline span could not be built; wraps the underlying failure.
    #[error("span {index}: {source}")]
    Span {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// A text file could not be parsed.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// An I/O failure while reading or writing a file.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

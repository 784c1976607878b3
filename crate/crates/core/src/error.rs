use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument outside domain ({detail})")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: no convergence after {work} steps (error estimate {estimate:e})")]
    NonConvergence { op: &'static str, work: u64, estimate: f64 },

    #[error("{op}: {have} bits of precision, {need} required")]
    PrecisionTooLow { op: &'static str, have: u32, need: u32 },

    #[error("bell_eval: polynomial of degree {degree} needs {degree} arguments, got {got}")]
    InsufficientArguments { degree: usize, got: usize },

    #[error("malformed Bell polynomial: {0}")]
    MalformedPolynomial(String),

    #[error("{op}: integrand is not finite at abscissa {at}")]
    NonFinite { op: &'static str, at: String },

    #[error("unknown identity case `{0}`")]
    UnknownCase(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use alloc::string::String;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{op}: argument out of range: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: pole at s = 1")]
    Pole { op: &'static str },

    #[error("{op}({params}): no convergence, estimated relative error {estimate:e} exceeds target {target:e}")]
    Convergence {
        op: &'static str,
        params: String,
        estimate: f64,
        target: f64,
    },

    #[error("{op}({params}): routes disagree, {first} vs {second} (tolerance {tolerance:e})")]
    RouteDisagreement {
        op: &'static str,
        params: String,
        first: f64,
        second: f64,
        tolerance: f64,
    },

    #[error("{op}({params}): extrapolation unstable, {detail}")]
    Extrapolation {
        op: &'static str,
        params: String,
        detail: String,
    },

    #[error("{op}: resource limit, {detail}")]
    ResourceLimit { op: &'static str, detail: String },

    #[error("{op}({params}): precision exhausted, value {value:e} is below its error estimate {abs_error:e}")]
    PrecisionExhausted {
        op: &'static str,
        params: String,
        value: f64,
        abs_error: f64,
    },
}

impl Error {
    /// Name of the operation that failed.
    pub fn op(&self) -> &'static str {
        match self {
            Error::Domain { op, .. }
            | Error::Pole { op }
            | Error::Convergence { op, .. }
            | Error::RouteDisagreement { op, .. }
            | Error::Extrapolation { op, .. }
            | Error::ResourceLimit { op, .. }
            | Error::PrecisionExhausted { op, .. } => op,
        }
    }

    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Invalid distribution parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The requested raw moment does not exist (order must be below the power parameter).
    #[error("moment of order {order} does not exist: requires alpha > {order}, got alpha = {alpha}")]
    MomentDoesNotExist { order: u32, alpha: f64 },

    /// An iterative procedure stopped before meeting its tolerance.
    #[error("{what} did not converge: best estimate {estimate}, error bound {error_bound}")]
    NonConvergence {
        what: &'static str,
        estimate: f64,
        error_bound: f64,
    },

    /// A quantity overflowed or underflowed so the result is not representable.
    #[error("numeric failure in {op}: {detail}")]
    Numeric { op: &'static str, detail: String },

    /// An index argument is out of range.
    #[error("index error: {0}")]
    Index(String),

    /// Data rejected during construction or ingestion.
    #[error("data error: {0}")]
    Data(String),

    /// Malformed configuration input.
    #[error("config error: {0}")]
    Config(String),

    /// The information matrix could not be inverted.
    #[error("singular information matrix: {0}")]
    Singular(String),

    /// Too many model fits failed in a simulation cell.
    #[error("simulation failure: {failed} of {total} fits failed at sample size {size}")]
    TooManyFailures {
        size: usize,
        failed: usize,
        total: usize,
    },
}

impl Error {
    /// True for errors caused by bad input (arguments, parameters, data or
    /// configuration) rather than by a numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::InvalidParams(_)
                | Error::Index(_)
                | Error::Data(_)
                | Error::Config(_)
                | Error::MomentDoesNotExist { .. }
        )
    }

    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn numeric(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Numeric {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

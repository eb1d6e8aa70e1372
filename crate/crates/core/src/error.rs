use thiserror::Error;

/// Errors raised by the geometry, transport and spin pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point r = {r} lies on or inside the horizon r_s = {r_s}")]
    Horizon { r: f64, r_s: f64 },
    #[error("coordinate singularity at theta = {theta}")]
    CoordinateSingularity { theta: f64 },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("metric is singular at the requested point")]
    SingularMetric,
    #[error("non-finite generator encountered at tau = {tau}")]
    NonFiniteGenerator { tau: f64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("momentum grid covers only {covered} of the packet norm")]
    Coverage { covered: f64 },
    #[error("density matrix has negative eigenvalue {0}")]
    NegativeEigenvalue(f64),
    #[error("config field `{field}`: {reason}")]
    Config { field: String, reason: String },
}

impl Error {
    /// Process exit status: 1 for bad input, 2 for a failed numerical check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Horizon { .. }
            | Error::CoordinateSingularity { .. }
            | Error::InvalidParameter { .. }
            | Error::Coverage { .. }
            | Error::Config { .. } => 1,
            Error::SingularMetric
            | Error::NonFiniteGenerator { .. }
            | Error::Invariant(_)
            | Error::NegativeEigenvalue(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

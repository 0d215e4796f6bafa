use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain of {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("result of {what} not representable: {detail}")]
    Range { what: &'static str, detail: String },

    #[error("{what} failed to reach the requested accuracy: {detail}")]
    Accuracy { what: &'static str, detail: String },

    #[error("geometry violation: {0}")]
    Geometry(String),

    #[error("contact classification uncertain on arclength interval [{start}, {end}]: {reason}")]
    ClassificationUncertain { start: f64, end: f64, reason: String },

    #[error("caustic: {0}")]
    Caustic(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("saddle points coalesce (second derivative is zero); use the uniform Airy form")]
    Coalescence,

    #[error("pole: {0}")]
    Pole(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("inconclusive: {reason} (numerical floor {floor:.3e})")]
    Inconclusive { reason: String, floor: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { what, detail: detail.into() }
    }

    pub(crate) fn accuracy(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Accuracy { what, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

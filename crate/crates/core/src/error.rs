use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("rational surd: {0} is a perfect square")]
    RationalSurd(String),

    #[error("not a discriminant: {0} is not 0 or 1 mod 4")]
    NotDiscriminant(String),

    #[error("invariant violation at h={h}: {detail}")]
    Invariant { h: usize, detail: String },

    #[error("no period: expansion was truncated after {steps} rows")]
    NoPeriod { steps: usize },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("not a real quadratic function field: {0}")]
    NotRealQuadratic(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("family {family}: {detail}")]
    Family { family: String, detail: String },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("kind mismatch: fixture is {fixture}, expansion is {computed}")]
    KindMismatch { fixture: &'static str, computed: &'static str },
}

impl Error {
    pub(crate) fn parse(line: usize, detail: impl Into<String>) -> Self {
        Error::Parse { line, detail: detail.into() }
    }
}

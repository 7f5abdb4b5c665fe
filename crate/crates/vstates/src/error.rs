//! Error type shared by every layer of the crate.

use thiserror::Error;

/// Errors raised by the numerical layers and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("pole of {op} at x = {x}")]
    Pole { op: &'static str, x: f64 },

    #[error("{op} did not converge (achieved bound {bound:e})")]
    NonConvergence { op: &'static str, bound: f64 },

    #[error("radius of interface {component} is non-positive ({value:e}) at x = {x}")]
    RadiusNonPositive { component: usize, x: f64, value: f64 },

    #[error("components overlap: clearance {clearance:e} below required {required:e}")]
    Overlap { clearance: f64, required: f64 },

    #[error("spectral block M_{j} is singular (det = {det:e})")]
    SingularBlock { j: usize, det: f64 },

    #[error("residual violates the first-mode link: c1 - (1-gamma) b^2 d1 = {defect:e}")]
    LinkViolation { defect: f64 },

    #[error("speed selection is degenerate: residual = {offset:e} + speed * {slope:e}")]
    DegenerateSlope { offset: f64, slope: f64 },

    #[error("Newton iteration stalled after {iters} steps at residual {residual:e}")]
    NotConverged { iters: usize, residual: f64, best: Box<crate::solver::Solution> },

    #[error("singular Newton matrix at iteration {iter}")]
    SingularJacobian { iter: usize },

    #[error("invalid configuration: {field}: {detail}")]
    Config { field: String, detail: String },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn config(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Config { field: field.into(), detail: detail.into() }
    }
}

//! Crate-wide error type.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::models::HypothesisReport;

/// Errors shared by all modules.
#[derive(Debug)]
pub enum Error {
    /// An evaluation left the valid domain (non-finite value, radius out of
    /// range, malformed input data).
    Domain(String),
    /// An iterative scheme hit its subdivision or iteration cap before
    /// reaching the requested tolerance.
    Convergence(String),
    /// A trajectory exceeded the overflow guard.
    Divergence(String),
    /// The operation is not applicable to the given model or arguments.
    Precondition(String),
    /// A bound that requires verified hypotheses was refused; the report
    /// carries the failing margins.
    HypothesesViolated(Box<HypothesisReport>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "convergence error: {msg}"),
            Error::Divergence(msg) => write!(f, "divergence error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition error: {msg}"),
            Error::HypothesesViolated(report) => write!(
                f,
                "hypotheses violated: worst radial gap {:.3e}, tangential gap {:.3e}, \
                 potential-gradient gap {:.3e}",
                report.min_gap_rad, report.min_gap_tan, report.min_potential_minus_grad_sq
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

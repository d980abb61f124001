//! Command-line verification campaigns over the model geometries in
//! `solvol-core`: model loading from JSON documents, hypothesis/residual
//! checks, volume-growth bound reports, spectral estimates, and aggregate
//! suite runs with CSV/JSON output.

pub mod commands;
pub mod docs;
pub mod output;
pub mod suite;

/// Process exit classes: 0 pass, 1 verified failure, 2 usage/precondition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitClass {
    Pass,
    Failure,
    Usage,
}

impl ExitClass {
    pub fn code(self) -> i32 {
        match self {
            ExitClass::Pass => 0,
            ExitClass::Failure => 1,
            ExitClass::Usage => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ExitClass::Pass => "pass",
            ExitClass::Failure => "fail",
            ExitClass::Usage => "precondition",
        }
    }
}

/// Core errors all classify as usage/precondition: they mean the requested
/// computation was not applicable or could not be carried out, as opposed to
/// a bound or residual check that ran and failed.
pub fn classify_error(_err: &solvol_core::Error) -> ExitClass {
    ExitClass::Usage
}

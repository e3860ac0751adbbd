//! Input files, analysis reports and bound sweeps.

mod analysis;
mod family;
mod input;
mod stress;

use thiserror::Error;

pub use analysis::{
    analyze, enumeration_error_kind, input_hash, quadratic_closed_forms, quadratic_report,
    AnalysisOptions, AnalysisReport, CandidateEntry, Counts, CrossCheck, ErrorInfo,
    QuadraticReport, QuadraticSection, Summary, Timing, Tolerances, TypeSection, FORMAT_VERSION,
};
pub use family::{family_polynomial, FAMILY_NAME};
pub use input::{
    parse_polynomial_file, polynomial_to_file, InputError, ParsedInput, PolynomialFile, TermEntry,
};
pub use stress::{
    random_polynomial, six_cycle_cubic, stress, trial_rng, Injection, StressOptions, StressSummary,
    TypeStats, COEFFICIENT_DENOMINATOR,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ReportError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{cycle_type} bound violated: found {found} > {bound}")]
    BoundViolation {
        cycle_type: String,
        found: usize,
        bound: usize,
    },
}

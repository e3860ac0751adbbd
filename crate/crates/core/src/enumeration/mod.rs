//! Candidate crossing cycles from the closing equations.

mod candidate;
mod general;
pub mod quadratic;

pub use candidate::{
    canonical_word, CycleCandidate, CycleType, Filter, FilterRecord, FilterVerdict, Seam,
    SeamCoordinate,
};
pub use general::{
    aba_closing_system, enumerate, enumerate_aa, enumerate_aba, enumerate_bab, enumerate_bb,
    Enumeration, EnumerationFlags, EnumerationOptions,
};
pub use quadratic::{
    delta_p, pc_polynomial, quadratic_aba_analyze, quadratic_aba_region, quadratic_bb_conditions,
    quadratic_polynomial, radicand, AbaClause, AbaPair, AbaRegion, QuadraticAbaAnalysis,
    QuadraticBbConditions,
};

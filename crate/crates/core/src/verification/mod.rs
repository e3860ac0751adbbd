//! Level-curve tracing, candidate certification and the grid oracle.

mod export;
mod oracle;
mod tracer;
mod verify;

pub use export::{crossings_to_csv, curve_to_csv, curves_to_svg, SVG_SIZE};
pub use oracle::{brute_force_cycle_scan, OracleCandidate};
pub use tracer::{
    edge_root_near, hausdorff, trace_level_curve, trace_with_outcome, Crossing, TraceOptions,
    TraceStop, TracedCurve,
};
pub use verify::{
    extra_level_incidence, verify_and_record, verify_candidate, verify_cycle, verify_from,
    Verification, VerificationRecord, VerifyOptions, VerifyPolicy,
};

use thiserror::Error;

use crate::switching::Edge;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolyError {
    /// The polynomial vanishes identically; for a closing difference this is the
    /// continuum-of-orbits case.
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooSmall { degree: usize, target: usize },
    /// The resultant vanished identically: the two curves share a component.
    #[error("resultant is identically zero (common component)")]
    CommonComponent,
    #[error("empty interval ({lo}, {hi})")]
    EmptyInterval { lo: f64, hi: f64 },
    #[error("invalid term index (k = {k}, j = {j}); need 0 <= j <= k")]
    InvalidTerm { k: u32, j: u32 },
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("edge point {edge:?}({t}) is a corner of the square")]
    CornerPoint { edge: Edge, t: f64 },
    #[error("edge coordinate {0} lies outside [0, 1]")]
    OutOfRange(f64),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EnumerationError {
    #[error("closing difference vanishes identically: continuum of non-isolated periodic orbits")]
    DegenerateContinuum,
    #[error("H(0,0) = {0} is nonzero")]
    ConstantTermNonzero(String),
    #[error("closing system has a common component")]
    CommonComponent,
    #[error("{cycle_type} bound violated: found {found} > {bound}")]
    BoundViolation {
        cycle_type: String,
        found: usize,
        bound: usize,
    },
    #[error("closed form undefined: b = 0 or a = c")]
    DegenerateDenominator,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TraceError {
    #[error("start point lies on a critical point of H (|grad H| = {0:e})")]
    StartOnCriticalPoint(f64),
    #[error("level curve is tangent to the switching manifold at {edge:?}({t})")]
    TangencyEncountered { edge: Edge, t: f64 },
    #[error("level curve approaches a critical point near ({x}, {y}) (|grad H| = {grad:e})")]
    GradientFloorHit { x: f64, y: f64, grad: f64 },
    #[error("no closure after {0} crossings")]
    MaxCrossingsExceeded(usize),
    #[error("continuation stalled near ({x}, {y})")]
    StepLimit { x: f64, y: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("traced word {found:?} does not match cycle type (expected {expected:?})")]
    WordMismatch { expected: String, found: String },
    #[error("level curve meets {edge:?} at t = {t} away from the declared seams")]
    ExtraEdgeIncidence { edge: Edge, t: f64 },
    #[error("crossing at {edge:?}({t}) is {class}, not sewing")]
    NonSewingCrossing { edge: Edge, t: f64, class: String },
    #[error("trace did not close (closure error {0:e})")]
    NotClosed(f64),
}

impl VerifyError {
    /// Stable short tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            VerifyError::Trace(TraceError::StartOnCriticalPoint(_)) => "StartOnCriticalPoint",
            VerifyError::Trace(TraceError::TangencyEncountered { .. }) => "TangencyEncountered",
            VerifyError::Trace(TraceError::GradientFloorHit { .. }) => "GradientFloorHit",
            VerifyError::Trace(TraceError::MaxCrossingsExceeded(_)) => "MaxCrossingsExceeded",
            VerifyError::Trace(TraceError::StepLimit { .. }) => "StepLimit",
            VerifyError::Trace(TraceError::Geometry(_)) => "CornerPoint",
            VerifyError::WordMismatch { .. } => "WordMismatch",
            VerifyError::ExtraEdgeIncidence { .. } => "ExtraEdgeIncidence",
            VerifyError::NonSewingCrossing { .. } => "NonSewingCrossing",
            VerifyError::NotClosed(_) => "NotClosed",
        }
    }
}

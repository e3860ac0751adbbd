//! Certification of enumerated candidates by tracing and level-set inspection.

use serde::Serialize;

use super::tracer::{trace_with_outcome, TraceOptions, TracedCurve};
use crate::enumeration::{CycleCandidate, Filter, FilterVerdict};
use crate::error::{TraceError, VerifyError};
use crate::poly::roots::{real_roots_in_closed_interval, RootOptions};
use crate::poly::scalar::{self, Scalar};
use crate::poly::{BivariatePolynomial, FloatPoly2, UnivariatePolynomial};
use crate::switching::{Edge, EdgePoint, FilippovClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum VerifyPolicy {
    /// Trace the cycle and check only the edge points the trace visits.
    #[default]
    Trace,
    /// Trace, then also require that no other point of the boundary lies on any
    /// of the candidate's levels.
    LevelSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub trace: TraceOptions,
    pub policy: VerifyPolicy,
    /// Distance within which a traced crossing matches a declared seam point.
    pub seam_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trace: TraceOptions::default(),
            policy: VerifyPolicy::Trace,
            seam_tol: 1e-6,
        }
    }
}

/// Summary of a verification attempt, suitable for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub verified: bool,
    pub policy: VerifyPolicy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub word: String,
    pub closed: bool,
    pub crossings: usize,
    pub closure_error: f64,
    pub max_level_drift: f64,
    pub min_grad: f64,
    pub max_level_jump: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub record: VerificationRecord,
    pub curve: TracedCurve,
    pub error: Option<VerifyError>,
}

impl Verification {
    pub fn verified(&self) -> bool {
        self.error.is_none()
    }
}

/// Traces the candidate from its first seam point and checks closure, word,
/// sewing crossings, the gradient floor and edge incidences.
pub fn verify_cycle(
    h: &BivariatePolynomial,
    cand: &CycleCandidate,
    opts: &VerifyOptions,
) -> Result<Verification, VerifyError> {
    let v = verify_candidate(h, cand, opts);
    match v.error.clone() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Like [`verify_cycle`] but always returns the record and curve.
pub fn verify_candidate(
    h: &BivariatePolynomial,
    cand: &CycleCandidate,
    opts: &VerifyOptions,
) -> Verification {
    verify_from(h, cand, cand.start(), opts)
}

/// Verification starting from an arbitrary seam point of the candidate.
pub fn verify_from(
    h: &BivariatePolynomial,
    cand: &CycleCandidate,
    start: &EdgePoint,
    opts: &VerifyOptions,
) -> Verification {
    let hf = h.to_float();
    let mut trace_opts = opts.trace.clone();
    if trace_opts.anchor_levels.is_empty() {
        trace_opts.anchor_levels = cand.levels.clone();
    }
    let (curve, trace_err) = trace_with_outcome(&hf, start, &trace_opts);
    let error = check(h, &hf, cand, &curve, trace_err, opts);
    let record = VerificationRecord {
        verified: error.is_none(),
        policy: opts.policy,
        failure: error.as_ref().map(|e| e.kind().to_string()),
        detail: error.as_ref().map(|e| e.to_string()),
        word: curve.word.clone(),
        closed: curve.closed,
        crossings: curve.crossings.len(),
        closure_error: curve.closure_error,
        max_level_drift: curve.max_level_drift,
        min_grad: curve.min_grad,
        max_level_jump: curve.max_jump(),
    };
    Verification {
        record,
        curve,
        error,
    }
}

fn check(
    h: &BivariatePolynomial,
    hf: &FloatPoly2,
    cand: &CycleCandidate,
    curve: &TracedCurve,
    trace_err: Option<TraceError>,
    opts: &VerifyOptions,
) -> Option<VerifyError> {
    for c in &curve.crossings {
        if c.class != FilippovClass::Sewing {
            return Some(VerifyError::NonSewingCrossing {
                edge: c.point.edge,
                t: c.point.t,
                class: c.class.to_string(),
            });
        }
        if !is_declared(cand, &c.point, opts.seam_tol) {
            return Some(VerifyError::ExtraEdgeIncidence {
                edge: c.point.edge,
                t: c.point.t,
            });
        }
    }
    if let Some(e) = trace_err {
        return Some(e.into());
    }
    if !curve.closed {
        return Some(VerifyError::NotClosed(curve.closure_error));
    }
    if curve.max_level_drift > opts.trace.level_drift_tol {
        return Some(VerifyError::NotClosed(curve.max_level_drift));
    }
    let expected = cand.cycle_type.expected_word();
    if curve.word != expected {
        return Some(VerifyError::WordMismatch {
            expected: expected.to_string(),
            found: curve.word.clone(),
        });
    }
    if opts.policy == VerifyPolicy::LevelSet {
        if let Some((edge, t)) = extra_level_incidence(h, hf, cand, opts.seam_tol) {
            return Some(VerifyError::ExtraEdgeIncidence { edge, t });
        }
    }
    None
}

/// Whether `p` (or its partner) is one of the candidate's seam points.
fn is_declared(cand: &CycleCandidate, p: &EdgePoint, tol: f64) -> bool {
    cand.seam_points.iter().any(|s| {
        let same_line = s.edge == p.edge || s.edge == p.edge.opposite();
        same_line && (s.t - p.t).abs() <= tol
    })
}

/// First boundary point, other than a declared seam, lying on one of the
/// candidate's levels. Exact levels are checked with exact root isolation.
pub fn extra_level_incidence(
    h: &BivariatePolynomial,
    hf: &FloatPoly2,
    cand: &CycleCandidate,
    seam_tol: f64,
) -> Option<(Edge, f64)> {
    for (i, level) in cand.levels.iter().enumerate() {
        let exact = cand.exact_levels.get(i).cloned().flatten();
        let k = exact.clone().unwrap_or_else(|| scalar::from_f64(*level));
        let declared: Vec<&EdgePoint> = cand
            .seam_points
            .iter()
            .filter(|p| nearest_level(hf, p, &cand.levels) == i)
            .collect();
        for edge in Edge::ALL {
            let f = &h.restrict_to_edge(edge)
                - &UnivariatePolynomial::constant(k.clone(), h.restrict_to_edge(edge).var());
            if f.is_zero() {
                return Some((edge, 0.5));
            }
            let roots = real_roots_in_closed_interval(
                &f,
                &Scalar::from_integer(0.into()),
                &Scalar::from_integer(1.into()),
                &RootOptions::default(),
            )
            .unwrap_or_default();
            for r in roots {
                let matched = declared.iter().any(|p| {
                    if p.edge != edge {
                        return false;
                    }
                    match (&p.exact, exact.is_some()) {
                        (Some(t), true) => &r.lo <= t && t <= &r.hi && f.sign_at(t) == 0,
                        _ => (p.t - r.value).abs() <= seam_tol,
                    }
                });
                if !matched {
                    return Some((edge, r.value));
                }
            }
        }
    }
    None
}

fn nearest_level(hf: &FloatPoly2, p: &EdgePoint, levels: &[f64]) -> usize {
    let (x, y) = p.position();
    let v = hf.eval(x, y);
    levels
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - v).abs().total_cmp(&(b.1 - v).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Verifies and records the `nondegenerate` and `verified` filters on the candidate.
/// Non-degeneracy is only decided when the trace closed or hit a critical point.
pub fn verify_and_record(
    h: &BivariatePolynomial,
    cand: &mut CycleCandidate,
    opts: &VerifyOptions,
) -> Verification {
    let v = verify_candidate(h, cand, opts);
    let nondegenerate = match &v.error {
        Some(VerifyError::Trace(
            TraceError::GradientFloorHit { .. } | TraceError::StartOnCriticalPoint(_),
        )) => FilterVerdict::Fail,
        _ if v.curve.closed => FilterVerdict::Pass,
        _ => FilterVerdict::Skipped,
    };
    cand.record(
        Filter::Nondegenerate,
        nondegenerate,
        Some(format!("min |grad H| = {:e}", v.record.min_grad)),
    );
    let verdict = if v.verified() {
        FilterVerdict::Pass
    } else {
        FilterVerdict::Fail
    };
    cand.record(Filter::Verified, verdict, v.record.detail.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_bb, EnumerationOptions};
    use crate::poly::scalar::int;

    fn quadratic(a: i64, b: i64, c: i64) -> BivariatePolynomial {
        BivariatePolynomial::from_terms([(2, 0, int(a)), (2, 1, int(b)), (2, 2, int(c))]).unwrap()
    }

    #[test]
    fn verified_quadratic_loop() {
        let h = quadratic(1, 2, -1);
        let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
        let cand = &e.candidates[0];
        let opts = VerifyOptions {
            policy: VerifyPolicy::LevelSet,
            ..VerifyOptions::default()
        };
        let v = verify_cycle(&h, cand, &opts).unwrap();
        assert_eq!(v.record.word, "b");
    }

    #[test]
    fn level_touching_the_left_side_is_an_extra_incidence() {
        // b²/2 < ac < b²: sewing seam, but the level ac²/b² meets x = 0 at y = √(ac)/|b|.
        let h = quadratic(3, -3, 2);
        let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
        let cand = e
            .candidates
            .iter()
            .find(|c| c.accepted())
            .expect("candidate");
        let opts = VerifyOptions {
            policy: VerifyPolicy::LevelSet,
            ..VerifyOptions::default()
        };
        let err = verify_cycle(&h, cand, &opts).unwrap_err();
        assert_eq!(err.kind(), "ExtraEdgeIncidence", "{err}");
    }
}

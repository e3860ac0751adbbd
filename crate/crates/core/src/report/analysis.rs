//! Full analysis of one polynomial and the quadratic closed-form report.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::input::{polynomial_to_file, PolynomialFile};
use super::ReportError;
use crate::enumeration::quadratic::quadratic_polynomial;
use crate::enumeration::{
    enumerate, enumerate_aba, enumerate_bb, quadratic_aba_analyze, quadratic_aba_region,
    quadratic_bb_conditions, AbaRegion, CycleCandidate, CycleType, Enumeration, EnumerationFlags,
    EnumerationOptions, Filter, FilterVerdict, QuadraticAbaAnalysis, QuadraticBbConditions,
};
use crate::error::EnumerationError;
use crate::mode::Mode;
use crate::poly::scalar::Scalar;
use crate::poly::BivariatePolynomial;
use crate::verification::{verify_and_record, VerificationRecord, VerifyOptions, VerifyPolicy};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisOptions {
    pub enumeration: EnumerationOptions,
    pub verify: VerifyOptions,
    /// Run the tracer on every accepted candidate.
    pub trace: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            enumeration: EnumerationOptions::default(),
            verify: VerifyOptions::default(),
            trace: true,
        }
    }
}

impl AnalysisOptions {
    pub fn with_mode(mode: Mode) -> Self {
        Self {
            enumeration: EnumerationOptions::with_mode(mode),
            ..Self::default()
        }
    }

    pub fn mode(&self) -> Mode {
        self.enumeration.mode
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub regime: Mode,
    pub root_tolerance: f64,
    pub boundary_epsilon: f64,
    pub residual_tol: f64,
    pub pairing_tol: f64,
    pub simple_tol: f64,
    pub tangency_tol: f64,
    pub closure_tol: f64,
    pub level_drift_tol: f64,
    pub grad_floor: f64,
    pub seam_tol: f64,
    pub max_crossings: usize,
    pub verify_policy: VerifyPolicy,
}

impl Tolerances {
    fn from_options(o: &AnalysisOptions) -> Self {
        let e = &o.enumeration;
        let t = &o.verify.trace;
        Self {
            regime: e.mode,
            root_tolerance: e.roots.tolerance,
            boundary_epsilon: e.roots.boundary_epsilon,
            residual_tol: e.residual_tol,
            pairing_tol: e.pairing_tol,
            simple_tol: e.simple_tol,
            tangency_tol: e.mode.tangency_tolerance(),
            closure_tol: t.closure_tol,
            level_drift_tol: t.level_drift_tol,
            grad_floor: t.grad_floor,
            seam_tol: o.verify.seam_tol,
            max_crossings: t.max_crossings,
            verify_policy: o.verify.policy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

pub fn enumeration_error_kind(e: &EnumerationError) -> &'static str {
    match e {
        EnumerationError::DegenerateContinuum => "DegenerateContinuum",
        EnumerationError::ConstantTermNonzero(_) => "ConstantTermNonzero",
        EnumerationError::CommonComponent => "CommonComponent",
        EnumerationError::BoundViolation { .. } => "BoundViolation",
        EnumerationError::DegenerateDenominator => "DegenerateDenominator",
        EnumerationError::ZeroDegree => "ZeroDegree",
        EnumerationError::Poly(_) => "PolyError",
        EnumerationError::Geometry(_) => "GeometryError",
    }
}

impl From<&EnumerationError> for ErrorInfo {
    fn from(e: &EnumerationError) -> Self {
        Self {
            kind: enumeration_error_kind(e).to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateEntry {
    /// `exact` when every seam coordinate is a known rational, else `float`.
    pub regime: Mode,
    #[serde(flatten)]
    pub candidate: CycleCandidate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeSection {
    pub cycle_type: CycleType,
    pub theoretical_bound: usize,
    pub regime: Mode,
    pub candidate_count: usize,
    pub accepted_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<EnumerationFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub closing_polynomials: Vec<String>,
    /// Smallest gap between the levels of two accepted candidates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_level_gap: Option<f64>,
    pub candidates: Vec<CandidateEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    /// The closed-form single-loop verdict.
    pub bb_conditions: bool,
    /// Single-loop candidates that pass every filter and level-set verification.
    pub bb_verified: usize,
    pub bb_consistent: bool,
    /// Closed-form two-loop pairs inside the square.
    pub aba_closed_form_interior: usize,
    /// Two-loop candidates inside the square from the general enumerator.
    pub aba_enumerated: usize,
    pub aba_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticSection {
    /// `H` has no terms below degree 2, so the closed forms apply.
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bb: Option<QuadraticBbConditions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aba: Option<QuadraticAbaAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aba_region: Option<AbaRegion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aba_error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    /// `exact` for the truth table and radicand, `float` for `q`, `ρ` and the pairs.
    pub regimes: QuadraticRegimes,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticRegimes {
    pub conditions: Mode,
    pub roots: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub aa: usize,
    pub bb: usize,
    pub aba: usize,
    pub bab: usize,
}

impl Counts {
    fn collect(f: impl Fn(CycleType) -> usize) -> Self {
        Self {
            aa: f(CycleType::Aa),
            bb: f(CycleType::Bb),
            aba: f(CycleType::Aba),
            bab: f(CycleType::Bab),
        }
    }

    pub fn get(&self, t: CycleType) -> usize {
        match t {
            CycleType::Aa => self.aa,
            CycleType::Bb => self.bb,
            CycleType::Aba => self.aba,
            CycleType::Bab => self.bab,
        }
    }

    pub fn total(&self) -> usize {
        self.aa + self.bb + self.aba + self.bab
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub accepted: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<Counts>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub format_version: u32,
    pub input_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub degree: u32,
    pub polynomial: PolynomialFile,
    pub tolerances: Tolerances,
    pub sections: Vec<TypeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic: Option<QuadraticSection>,
    pub summary: Summary,
    /// Wall-clock time; excluded from determinism comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl AnalysisReport {
    pub fn section(&self, t: CycleType) -> &TypeSection {
        self.sections
            .iter()
            .find(|s| s.cycle_type == t)
            .expect("all types present")
    }

    /// Accepted counts never exceed the per-type bounds.
    pub fn check_bounds(&self) -> Result<(), ReportError> {
        for s in &self.sections {
            if s.accepted_count > s.theoretical_bound {
                return Err(ReportError::BoundViolation {
                    cycle_type: s.cycle_type.to_string(),
                    found: s.accepted_count,
                    bound: s.theoretical_bound,
                });
            }
        }
        Ok(())
    }

    /// Pretty JSON after the bound check.
    pub fn to_json(&self) -> Result<String, ReportError> {
        self.check_bounds()?;
        Ok(serde_json::to_string_pretty(self).expect("report serializes") + "\n")
    }

    /// JSON with the timing field removed.
    pub fn to_json_without_timing(&self) -> Result<String, ReportError> {
        Self {
            timing: None,
            ..self.clone()
        }
        .to_json()
    }
}

/// SHA-256 of the canonical coefficient table.
pub fn input_hash(h: &BivariatePolynomial) -> String {
    let canonical = serde_json::to_string(&polynomial_to_file(h, None)).expect("serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn candidate_regime(mode: Mode, c: &CycleCandidate) -> Mode {
    let exact = match &c.seam {
        crate::enumeration::Seam::Single { coordinate } => coordinate.exact.is_some(),
        crate::enumeration::Seam::Pair { x, y } => x.exact.is_some() && y.exact.is_some(),
    };
    if mode == Mode::Exact && exact {
        Mode::Exact
    } else {
        Mode::Float
    }
}

fn min_level_gap(cands: &[CandidateEntry]) -> Option<f64> {
    let levels: Vec<&Vec<f64>> = cands
        .iter()
        .filter(|c| c.candidate.accepted())
        .map(|c| &c.candidate.levels)
        .collect();
    let mut best: Option<f64> = None;
    for i in 0..levels.len() {
        for j in i + 1..levels.len() {
            let gap = levels[i]
                .iter()
                .zip(levels[j].iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            best = Some(best.map_or(gap, |b: f64| b.min(gap)));
        }
    }
    best
}

fn build_section(
    h: &BivariatePolynomial,
    n: u32,
    t: CycleType,
    result: Result<Enumeration, EnumerationError>,
    opts: &AnalysisOptions,
) -> Result<TypeSection, ReportError> {
    let mode = opts.mode();
    match result {
        Ok(mut e) => {
            let records: Vec<Option<VerificationRecord>> = if opts.trace {
                e.candidates
                    .par_iter_mut()
                    .map(|c| {
                        c.accepted()
                            .then(|| verify_and_record(h, c, &opts.verify).record)
                    })
                    .collect()
            } else {
                vec![None; e.candidates.len()]
            };
            let accepted_count = e
                .candidates
                .iter()
                .filter(|c| passed_enumeration_filters(c))
                .count();
            let verified_count = opts
                .trace
                .then(|| records.iter().flatten().filter(|r| r.verified).count());
            let candidates: Vec<CandidateEntry> = e
                .candidates
                .into_iter()
                .zip(records)
                .map(|(candidate, verification)| CandidateEntry {
                    regime: candidate_regime(mode, &candidate),
                    candidate,
                    verification,
                })
                .collect();
            Ok(TypeSection {
                cycle_type: t,
                theoretical_bound: e.bound,
                regime: mode,
                candidate_count: candidates.len(),
                accepted_count,
                verified_count,
                flags: Some(e.flags),
                error: None,
                closing_polynomials: e.closing_polynomials,
                min_level_gap: min_level_gap(&candidates),
                candidates,
            })
        }
        Err(EnumerationError::BoundViolation {
            cycle_type,
            found,
            bound,
        }) => Err(ReportError::BoundViolation {
            cycle_type,
            found,
            bound,
        }),
        Err(err) => Ok(TypeSection {
            cycle_type: t,
            theoretical_bound: t.bound(n),
            regime: mode,
            candidate_count: 0,
            accepted_count: 0,
            verified_count: opts.trace.then_some(0),
            flags: None,
            error: Some((&err).into()),
            closing_polynomials: Vec::new(),
            min_level_gap: None,
            candidates: Vec::new(),
        }),
    }
}

/// Accepted ignoring the trace-based filters.
fn passed_enumeration_filters(c: &CycleCandidate) -> bool {
    c.filters
        .iter()
        .filter(|r| !matches!(r.filter, Filter::Verified | Filter::Nondegenerate))
        .all(|r| matches!(r.verdict, FilterVerdict::Pass | FilterVerdict::Skipped))
}

/// Runs all four enumerators, verification unless disabled, and the quadratic
/// closed forms for degree 2.
pub fn analyze(
    h: &BivariatePolynomial,
    label: Option<&str>,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport, ReportError> {
    let started = Instant::now();
    let n = h.degree();
    if n == 0 {
        return Err(ReportError::Invariant("degree must be at least 1".into()));
    }
    let work = opts.mode().prepare(h);
    let mut sections = Vec::with_capacity(4);
    for t in CycleType::ALL {
        sections.push(build_section(
            &work,
            n,
            t,
            enumerate(&work, t, &opts.enumeration),
            opts,
        )?);
    }
    let quadratic = (n == 2).then(|| quadratic_section(&work, opts));
    let section_of = |t: CycleType| sections.iter().find(|s| s.cycle_type == t);
    let summary = Summary {
        accepted: Counts::collect(|t| section_of(t).map_or(0, |s| s.accepted_count)),
        verified: opts.trace.then(|| {
            Counts::collect(|t| section_of(t).and_then(|s| s.verified_count).unwrap_or(0))
        }),
    };
    let report = AnalysisReport {
        format_version: FORMAT_VERSION,
        input_hash: input_hash(h),
        label: label.map(str::to_string),
        degree: n,
        polynomial: polynomial_to_file(h, label),
        tolerances: Tolerances::from_options(opts),
        sections,
        quadratic,
        summary,
        timing: Some(Timing {
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        }),
    };
    report.check_bounds()?;
    Ok(report)
}

fn quadratic_section(h: &BivariatePolynomial, opts: &AnalysisOptions) -> QuadraticSection {
    let regimes = QuadraticRegimes {
        conditions: Mode::Exact,
        roots: Mode::Float,
    };
    let applicable = h.terms().all(|(k, _, _)| k == 2);
    if !applicable {
        return QuadraticSection {
            applicable,
            bb: None,
            aba: None,
            aba_region: None,
            aba_error: None,
            cross_check: None,
            regimes,
        };
    }
    let (a, b, c) = (h.term(2, 0), h.term(2, 1), h.term(2, 2));
    quadratic_closed_forms(&a, &b, &c, opts)
}

/// Closed-form criteria for `a x² + b x y + c y²` with a cross-check against the
/// general enumerator and level-set verification.
pub fn quadratic_closed_forms(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    opts: &AnalysisOptions,
) -> QuadraticSection {
    let h = quadratic_polynomial(a, b, c);
    let bb = quadratic_bb_conditions(a, b, c);
    let (aba, aba_region, aba_error) = match (
        quadratic_aba_analyze(a, b, c),
        quadratic_aba_region(a, b, c),
    ) {
        (Ok(an), Ok(re)) => (Some(an), Some(re), None),
        (Err(e), _) | (_, Err(e)) => (None, None, Some(ErrorInfo::from(&e))),
    };
    let verify = VerifyOptions {
        policy: VerifyPolicy::LevelSet,
        ..opts.verify.clone()
    };
    let cross_check = (!h.is_zero()).then(|| {
        let bb_verified = match enumerate_bb(&h, &opts.enumeration) {
            Ok(mut e) => e
                .candidates
                .iter_mut()
                .filter(|c| c.accepted())
                .map(|c| verify_and_record(&h, c, &verify).verified())
                .filter(|&ok| ok)
                .count(),
            Err(_) => 0,
        };
        let aba_enumerated = enumerate_aba(&h, &opts.enumeration).map_or(0, |e| {
            e.candidates
                .iter()
                .filter(|c| c.verdict(Filter::Interior) == Some(FilterVerdict::Pass))
                .count()
        });
        let interior = aba
            .as_ref()
            .map_or(0, |an| an.solutions.iter().filter(|p| p.interior).count());
        CrossCheck {
            bb_conditions: bb.exists,
            bb_verified,
            bb_consistent: bb.exists == (bb_verified > 0),
            aba_closed_form_interior: interior,
            aba_enumerated,
            aba_consistent: aba.is_none() || interior == aba_enumerated,
        }
    });
    QuadraticSection {
        applicable: true,
        bb: Some(bb),
        aba,
        aba_region,
        aba_error,
        cross_check,
        regimes: QuadraticRegimes {
            conditions: Mode::Exact,
            roots: Mode::Float,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticReport {
    pub format_version: u32,
    #[serde(serialize_with = "crate::poly::scalar::serialize")]
    pub a: Scalar,
    #[serde(serialize_with = "crate::poly::scalar::serialize")]
    pub b: Scalar,
    #[serde(serialize_with = "crate::poly::scalar::serialize")]
    pub c: Scalar,
    #[serde(flatten)]
    pub section: QuadraticSection,
}

pub fn quadratic_report(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    opts: &AnalysisOptions,
) -> Result<QuadraticReport, ReportError> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(ReportError::Invariant(
            "(a, b, c) must not all vanish".into(),
        ));
    }
    Ok(QuadraticReport {
        format_version: FORMAT_VERSION,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        section: quadratic_closed_forms(a, b, c, opts),
    })
}

//! Seeded random sweeps checking the per-type bounds.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::analysis::enumeration_error_kind;
use super::ReportError;
use crate::enumeration::{enumerate, CycleType, EnumerationOptions};
use crate::poly::scalar::{parse_scalar, rat};
use crate::poly::BivariatePolynomial;

/// Denominator of the random coefficients `k / 1024`, `|k| ≤ 1024`.
pub const COEFFICIENT_DENOMINATOR: i64 = 1024;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StressOptions {
    pub degree: u32,
    pub trials: usize,
    pub seed: u64,
    /// Add the six-cycle cubic as an extra input when `degree == 3`.
    pub inject_example: bool,
    pub enumeration: EnumerationOptions,
}

impl StressOptions {
    pub fn new(degree: u32, trials: usize, seed: u64) -> Self {
        Self {
            degree,
            trials,
            seed,
            inject_example: true,
            enumeration: EnumerationOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeStats {
    pub cycle_type: CycleType,
    pub bound: usize,
    /// Largest accepted count among hypothesis-satisfying random inputs.
    pub max_observed: usize,
    /// Accepted count → number of inputs.
    pub histogram: BTreeMap<usize, usize>,
    /// Inputs excluded because a hypothesis failed, by reason.
    pub excluded: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Injection {
    pub label: String,
    pub counts: BTreeMap<CycleType, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StressSummary {
    pub degree: u32,
    pub trials: usize,
    pub seed: u64,
    pub types: Vec<TypeStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injection: Option<Injection>,
    /// Largest count per type including the injected input.
    pub max_with_injection: BTreeMap<CycleType, usize>,
}

impl StressSummary {
    pub fn stats(&self, t: CycleType) -> &TypeStats {
        self.types
            .iter()
            .find(|s| s.cycle_type == t)
            .expect("all types present")
    }
}

/// Random `H` with `H(0,0) = 0` and every other coefficient `k/1024`; the
/// leading form is redrawn until it is nonzero.
pub fn random_polynomial(rng: &mut impl Rng, degree: u32) -> BivariatePolynomial {
    loop {
        let mut h = BivariatePolynomial::zero();
        for k in 1..=degree {
            for j in 0..=k {
                let num = rng.gen_range(-COEFFICIENT_DENOMINATOR..=COEFFICIENT_DENOMINATOR);
                h.add_term(k, j, rat(num, COEFFICIENT_DENOMINATOR));
            }
        }
        if h.degree() == degree {
            return h;
        }
    }
}

/// Independent generator for trial `i`, whatever the worker count.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// The six-cycle cubic with its coefficients as printed to ten digits.
pub fn six_cycle_cubic() -> BivariatePolynomial {
    let terms = [
        (3, 0, "-1.853838675"),
        (3, 1, "0.002642824354"),
        (3, 2, "-0.5394212632"),
        (2, 0, "2.500039387"),
        (2, 1, "0.5370427213"),
        (1, 0, "-1.071920970"),
        (1, 1, "0.2912880768"),
    ];
    BivariatePolynomial::from_terms(
        terms
            .iter()
            .map(|&(k, j, v)| (k, j, parse_scalar(v).expect("valid decimal"))),
    )
    .expect("valid terms")
}

type TrialOutcome = Vec<Result<usize, String>>;

fn run_trial(
    h: &BivariatePolynomial,
    opts: &EnumerationOptions,
) -> Result<TrialOutcome, ReportError> {
    CycleType::ALL
        .iter()
        .map(|&t| match enumerate(h, t, opts) {
            Ok(e) => Ok(Ok(e.accepted_count())),
            Err(crate::error::EnumerationError::BoundViolation {
                cycle_type,
                found,
                bound,
            }) => Err(ReportError::BoundViolation {
                cycle_type,
                found,
                bound,
            }),
            Err(e) => Ok(Err(enumeration_error_kind(&e).to_string())),
        })
        .collect()
}

pub fn stress(opts: &StressOptions) -> Result<StressSummary, ReportError> {
    if !(1..=8).contains(&opts.degree) {
        return Err(ReportError::Invariant(format!(
            "degree {} outside [1, 8]",
            opts.degree
        )));
    }
    if opts.trials == 0 {
        return Err(ReportError::Invariant("trials must be at least 1".into()));
    }
    let outcomes: Vec<TrialOutcome> = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let h = random_polynomial(&mut trial_rng(opts.seed, i), opts.degree);
            run_trial(&h, &opts.enumeration)
        })
        .collect::<Result<_, _>>()?;

    let mut types: Vec<TypeStats> = CycleType::ALL
        .iter()
        .map(|&t| TypeStats {
            cycle_type: t,
            bound: t.bound(opts.degree),
            max_observed: 0,
            histogram: BTreeMap::new(),
            excluded: BTreeMap::new(),
        })
        .collect();
    for outcome in &outcomes {
        for (stats, r) in types.iter_mut().zip(outcome) {
            match r {
                Ok(count) => {
                    *stats.histogram.entry(*count).or_default() += 1;
                    stats.max_observed = stats.max_observed.max(*count);
                }
                Err(kind) => *stats.excluded.entry(kind.clone()).or_default() += 1,
            }
        }
    }
    for s in &types {
        if s.max_observed > s.bound {
            return Err(ReportError::BoundViolation {
                cycle_type: s.cycle_type.to_string(),
                found: s.max_observed,
                bound: s.bound,
            });
        }
    }

    let injection = (opts.inject_example && opts.degree == 3)
        .then(|| {
            let outcome = run_trial(&six_cycle_cubic(), &opts.enumeration)?;
            let counts = CycleType::ALL
                .iter()
                .zip(outcome)
                .map(|(&t, r)| (t, r.unwrap_or(0)))
                .collect();
            Ok::<_, ReportError>(Injection {
                label: "six-cycle cubic".into(),
                counts,
            })
        })
        .transpose()?;
    let max_with_injection = types
        .iter()
        .map(|s| {
            let injected = injection
                .as_ref()
                .and_then(|i| i.counts.get(&s.cycle_type))
                .copied()
                .unwrap_or(0);
            (s.cycle_type, s.max_observed.max(injected))
        })
        .collect();
    Ok(StressSummary {
        degree: opts.degree,
        trials: opts.trials,
        seed: opts.seed,
        types,
        injection,
        max_with_injection,
    })
}

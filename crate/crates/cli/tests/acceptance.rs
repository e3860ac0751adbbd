//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use torus_cycles::enumeration::{
    delta_p, enumerate, enumerate_aba, enumerate_bb, pc_polynomial, quadratic_aba_analyze,
    quadratic_bb_conditions, quadratic_polynomial, radicand, CycleCandidate, CycleType,
    EnumerationOptions, Filter, FilterVerdict, Seam,
};
use torus_cycles::poly::roots::{real_roots, real_roots_in_closed_interval, RootOptions};
use torus_cycles::poly::scalar::{int, rat, sign, Scalar};
use torus_cycles::poly::{BivariatePolynomial, UnivariatePolynomial, Variable};
use torus_cycles::report::{
    analyze, family_polynomial, parse_polynomial_file, random_polynomial, stress, trial_rng,
    AnalysisOptions, StressOptions,
};
use torus_cycles::verification::{
    brute_force_cycle_scan, verify_candidate, verify_from, VerifyOptions, VerifyPolicy,
};

const SIX_PAIRS: [(f64, f64); 6] = [
    (0.25, 0.516),
    (0.33, 0.490),
    (0.41, 0.494),
    (0.49, 0.507),
    (0.57, 0.511),
    (0.65, 0.485),
];
const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

/// A verified cycle kept for the conservation and re-trace checks.
struct Verified {
    h: BivariatePolynomial,
    candidate: CycleCandidate,
    policy: VerifyPolicy,
    source: &'static str,
}

#[derive(Default)]
struct Pool(Vec<Verified>);

impl Pool {
    fn add(
        &mut self,
        h: &BivariatePolynomial,
        c: &CycleCandidate,
        policy: VerifyPolicy,
        source: &'static str,
    ) {
        self.0.push(Verified {
            h: h.clone(),
            candidate: c.clone(),
            policy,
            source,
        });
    }
}

fn verify_opts(policy: VerifyPolicy) -> VerifyOptions {
    VerifyOptions {
        policy,
        ..VerifyOptions::default()
    }
}

fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Scalar {
    loop {
        let n = rng.gen_range(-max_num..=max_num);
        if n != 0 {
            return rat(n, rng.gen_range(1..=max_den));
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn criterion_1(pool: &mut Pool) -> Outcome {
    let started = Instant::now();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/example1_degree3.json");
    let text = std::fs::read_to_string(&path).expect("fixture present");
    let parsed = parse_polynomial_file(&text).expect("fixture parses");
    let report = match analyze(
        &parsed.polynomial,
        parsed.label.as_deref(),
        &AnalysisOptions::default(),
    ) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("analysis failed: {e}"),
            }
        }
    };
    let elapsed = started.elapsed();
    let section = report.section(CycleType::Aba);
    // Verification runs exactly on the candidates that pass the enumeration filters.
    let accepted: Vec<_> = section
        .candidates
        .iter()
        .filter(|c| c.verification.is_some())
        .collect();
    let mut pairs: Vec<(f64, f64)> = accepted
        .iter()
        .map(|c| {
            let v = c.candidate.seam.values();
            (v[0], v[1])
        })
        .collect();
    pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let located = pairs.len() == 6
        && pairs
            .iter()
            .zip(SIX_PAIRS)
            .all(|(g, w)| (g.0 - w.0).abs() <= 5e-3 && (g.1 - w.1).abs() <= 5e-3);
    let mut verified = 0;
    let mut failures = Vec::new();
    for c in &accepted {
        match &c.verification {
            Some(r) if r.verified => {
                verified += 1;
                pool.add(
                    &parsed.polynomial,
                    &c.candidate,
                    VerifyPolicy::Trace,
                    "cubic",
                );
            }
            Some(r) => failures.push(format!(
                "x={:.3}: {}",
                c.candidate.seam.values()[0],
                r.failure.clone().unwrap_or_default()
            )),
            None => failures.push("untraced".into()),
        }
    }
    let fast = elapsed < Duration::from_secs(5);
    Outcome {
        pass: section.accepted_count == 6 && located && verified == 6 && fast,
        detail: format!(
            "accepted {} (expected 6), pairs within 5e-3: {located}, verified {verified}/6{}, {}",
            section.accepted_count,
            if failures.is_empty() {
                String::new()
            } else {
                format!(" [{}]", failures.join("; "))
            },
            secs(elapsed)
        ),
    }
}

/// `min |∇H| > 0` on the segment `x = x_k, y ∈ [0,1]`, where `H_y` vanishes.
fn line_is_nondegenerate(h: &BivariatePolynomial, xk: &Scalar) -> bool {
    let hx = h.partial_x().at_x(xk);
    if hx.is_zero() {
        return false;
    }
    if hx.degree() == Some(0) {
        return true;
    }
    real_roots_in_closed_interval(&hx, &int(0), &int(1), &RootOptions::default())
        .map(|r| r.is_empty())
        .unwrap_or(false)
}

fn criterion_2(pool: &mut Pool) -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    let mut total = Duration::ZERO;
    for n in 2..=8u32 {
        let started = Instant::now();
        let h = family_polynomial(n);
        let e = match enumerate_bb(&h, &EnumerationOptions::default()) {
            Ok(e) => e,
            Err(err) => {
                pass = false;
                notes.push(format!("n={n}: {err}"));
                continue;
            }
        };
        let count_ok = e.candidates.len() == (n - 1) as usize;
        let mut exact_ok = count_ok;
        let mut bad = Vec::new();
        for (i, c) in e.candidates.iter().enumerate() {
            let k = i as i64 + 1;
            let want = rat(k, n as i64);
            let Seam::Single { coordinate } = &c.seam else {
                exact_ok = false;
                continue;
            };
            let close = coordinate.exact.as_ref() == Some(&want)
                || (coordinate.value - k as f64 / n as f64).abs() <= 1e-12;
            exact_ok &= close;
            let transversal = c.verdict(Filter::Transversal) == Some(FilterVerdict::Pass);
            let nondegenerate = line_is_nondegenerate(&h, &want);
            let mut cand = c.clone();
            let v = torus_cycles::verification::verify_and_record(
                &h,
                &mut cand,
                &VerifyOptions::default(),
            );
            if v.verified() {
                pool.add(&h, &cand, VerifyPolicy::Trace, "family");
            }
            if !(transversal && nondegenerate) {
                bad.push(format!(
                    "k={k}{}{}",
                    if transversal { "" } else { " tangent" },
                    if nondegenerate { "" } else { " critical" }
                ));
            }
        }
        let distinct = e
            .candidates
            .iter()
            .all(|c| c.verdict(Filter::DistinctLevels) == Some(FilterVerdict::Pass));
        let elapsed = started.elapsed();
        total += elapsed;
        let ok =
            count_ok && exact_ok && bad.is_empty() && distinct && elapsed < Duration::from_secs(1);
        pass &= ok;
        if !ok {
            notes.push(format!(
                "n={n}: count {} exact {exact_ok} distinct {distinct} {}",
                e.candidates.len(),
                if bad.is_empty() {
                    String::new()
                } else {
                    format!("[{}]", bad.join(", "))
                }
            ));
        }
    }
    Outcome {
        pass,
        detail: format!(
            "{}; {}",
            if notes.is_empty() {
                "all n ok".to_string()
            } else {
                notes.join("; ")
            },
            secs(total)
        ),
    }
}

fn criterion_3(pool: &mut Pool) -> Outcome {
    let started = Instant::now();
    let mut rng = trial_rng(SEED, 3);
    let opts = verify_opts(VerifyPolicy::LevelSet);
    let (mut agree, mut positives, mut kept) = (0, 0, 0);
    let mut mismatches = Vec::new();
    let trials = 10_000;
    for _ in 0..trials {
        let (a, b, c) = (
            random_rational(&mut rng, 24, 8),
            random_rational(&mut rng, 24, 8),
            random_rational(&mut rng, 24, 8),
        );
        let verdict = quadratic_bb_conditions(&a, &b, &c).exists;
        let h = quadratic_polynomial(&a, &b, &c);
        let geometric = match enumerate_bb(&h, &EnumerationOptions::default()) {
            Ok(e) => e.accepted().any(|cand| {
                let v = verify_candidate(&h, cand, &opts);
                if v.verified() && kept < 200 {
                    kept += 1;
                    pool.add(&h, cand, VerifyPolicy::LevelSet, "quadratic bb");
                }
                v.verified()
            }),
            Err(_) => false,
        };
        positives += usize::from(geometric);
        if verdict == geometric {
            agree += 1;
        } else if mismatches.len() < 5 {
            mismatches.push(format!(
                "({a}, {b}, {c}) closed form {verdict} geometry {geometric}"
            ));
        }
    }
    let elapsed = started.elapsed();
    Outcome {
        pass: agree == trials && elapsed < Duration::from_secs(60),
        detail: format!(
            "{agree}/{trials} agree ({positives} with a cycle){}, {}",
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(" [{}]", mismatches.join("; "))
            },
            secs(elapsed)
        ),
    }
}

/// Cubic through `radicand(a, b, ·)` at four points, coefficient by coefficient.
fn interpolated_radicand(a: &Scalar, b: &Scalar) -> UnivariatePolynomial {
    let nodes: Vec<Scalar> = (0..4).map(int).collect();
    let mut out = UnivariatePolynomial::zero(Variable::C);
    for (i, xi) in nodes.iter().enumerate() {
        let mut basis = UnivariatePolynomial::constant(radicand(a, b, xi), Variable::C);
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                let factor = UnivariatePolynomial::new(vec![-xj.clone(), int(1)], Variable::C);
                basis = &(&basis * &factor)
                    * &UnivariatePolynomial::constant(int(1) / (xi - xj), Variable::C);
            }
        }
        out = &out + &basis;
    }
    out
}

fn criterion_4(pool: &mut Pool) -> Outcome {
    let started = Instant::now();
    let mut rng = trial_rng(SEED, 4);
    let mut identity_ok = 0;
    let mut sign_ok = 0;
    let mut sign_notes = Vec::new();
    for _ in 0..1000 {
        let (a, b) = (
            random_rational(&mut rng, 24, 8),
            random_rational(&mut rng, 24, 8),
        );
        let pc = pc_polynomial(&a, &b);
        if interpolated_radicand(&a, &b).coeffs() == pc.coeffs() {
            identity_ok += 1;
        }
        let distinct = real_roots(&pc, &RootOptions::default())
            .map(|r| r.len())
            .unwrap_or(usize::MAX);
        let predicted_ok = match sign(&delta_p(&a, &b)) {
            1 => distinct == 3,
            -1 => distinct == 1,
            _ => distinct < 3,
        };
        if predicted_ok {
            sign_ok += 1;
        } else if sign_notes.len() < 3 {
            sign_notes.push(format!("({a}, {b}) distinct roots {distinct}"));
        }
    }

    let verify = VerifyOptions::default();
    let (mut pairs_ok, mut compared, mut positive, mut interior_pairs, mut kept) = (0, 0, 0, 0, 0);
    let mut pair_notes = Vec::new();
    while compared < 1000 {
        let (a, b, c) = (
            random_rational(&mut rng, 24, 8),
            random_rational(&mut rng, 24, 8),
            random_rational(&mut rng, 24, 8),
        );
        if a == c {
            continue;
        }
        compared += 1;
        let analysis = quadratic_aba_analyze(&a, &b, &c).expect("b != 0, a != c");
        let h = quadratic_polynomial(&a, &b, &c);
        let e =
            enumerate_aba(&h, &EnumerationOptions::default()).expect("quadratic closing system");
        let got: Vec<Vec<f64>> = e.candidates.iter().map(|c| c.seam.values()).collect();
        let ok = match sign(&analysis.radicand) {
            1 => {
                positive += 1;
                let expected: Vec<(f64, f64)> = analysis
                    .solutions
                    .iter()
                    .filter(|p| p.interior)
                    .map(|p| (p.x, p.y))
                    .collect();
                interior_pairs += expected.len();
                let near_edge = analysis.solutions.iter().any(|p| {
                    [p.x, p.y]
                        .iter()
                        .any(|v| v.abs() < 1e-9 || (v - 1.0).abs() < 1e-9)
                });
                near_edge
                    || (expected.len() == got.len()
                        && expected.iter().all(|(x, y)| {
                            got.iter()
                                .any(|g| (g[0] - x).abs() <= 1e-10 && (g[1] - y).abs() <= 1e-10)
                        }))
            }
            -1 => got.is_empty(),
            _ => true,
        };
        for cand in e.accepted() {
            if kept < 200 && verify_candidate(&h, cand, &verify).verified() {
                kept += 1;
                pool.add(&h, cand, VerifyPolicy::Trace, "quadratic aba");
            }
        }
        if ok {
            pairs_ok += 1;
        } else if pair_notes.len() < 3 {
            pair_notes.push(format!(
                "({a}, {b}, {c}): closed form {:?} vs {got:?}",
                analysis.solutions
            ));
        }
    }
    let notes: Vec<String> = sign_notes.into_iter().chain(pair_notes).collect();
    Outcome {
        pass: identity_ok == 1000 && sign_ok == 1000 && pairs_ok == compared,
        detail: format!(
            "identity {identity_ok}/1000, discriminant {sign_ok}/1000, pairs {pairs_ok}/{compared} \
             ({positive} positive radicands, {interior_pairs} interior pairs){}, {}",
            if notes.is_empty() { String::new() } else { format!(" [{}]", notes.join("; ")) },
            secs(started.elapsed())
        ),
    }
}

fn criterion_5(_: &mut Pool) -> Outcome {
    let started = Instant::now();
    let mut pass = true;
    let mut notes = Vec::new();
    for n in [2u32, 3, 4] {
        match stress(&StressOptions::new(n, 1000, SEED)) {
            Ok(s) => {
                let maxima: Vec<String> = s
                    .types
                    .iter()
                    .map(|t| {
                        pass &= t.max_observed <= t.bound;
                        format!("{} {}/{}", t.cycle_type, t.max_observed, t.bound)
                    })
                    .collect();
                notes.push(format!("n={n}: {}", maxima.join(" ")));
                if n == 3 {
                    let injected = s
                        .max_with_injection
                        .get(&CycleType::Aba)
                        .copied()
                        .unwrap_or(0);
                    pass &= injected == 6;
                    notes.push(format!("injection aba {injected}"));
                }
            }
            Err(e) => {
                pass = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    Outcome {
        pass,
        detail: format!("{}, {}", notes.join("; "), secs(started.elapsed())),
    }
}

fn interior(seam: &[f64]) -> bool {
    seam.iter().all(|v| *v > 1e-4 && *v < 1.0 - 1e-4)
}

fn covered(from: &[Vec<f64>], by: &[Vec<f64>]) -> bool {
    from.iter().filter(|s| interior(s)).all(|s| {
        by.iter()
            .any(|t| s.iter().zip(t).all(|(u, v)| (u - v).abs() <= 1e-6))
    })
}

fn criterion_6(pool: &mut Pool) -> Outcome {
    let started = Instant::now();
    let (mut agree, mut excluded, mut kept) = (0, 0, 0);
    let mut notes = Vec::new();
    let inputs = 200;
    let verify = VerifyOptions::default();
    for i in 0..inputs {
        let mut rng = trial_rng(SEED + 6, i);
        let degree = rng.gen_range(1..=4);
        let h = random_polynomial(&mut rng, degree);
        let oracle = brute_force_cycle_scan(&h, 256);
        let mut ok = true;
        let mut skipped = false;
        for t in CycleType::ALL {
            let e = match enumerate(&h, t, &EnumerationOptions::default()) {
                Ok(e) => e,
                Err(_) => {
                    skipped = true;
                    continue;
                }
            };
            let ours: Vec<Vec<f64>> = e.candidates.iter().map(|c| c.seam.values()).collect();
            let theirs: Vec<Vec<f64>> = oracle
                .iter()
                .filter(|o| o.cycle_type == t)
                .map(|o| o.seam.clone())
                .collect();
            if !(covered(&ours, &theirs) && covered(&theirs, &ours)) {
                ok = false;
                if notes.len() < 3 {
                    notes.push(format!("input {i} {t}: {ours:?} vs {theirs:?}"));
                }
            }
            for cand in e.accepted() {
                if kept < 200 && verify_candidate(&h, cand, &verify).verified() {
                    kept += 1;
                    pool.add(&h, cand, VerifyPolicy::Trace, "random");
                }
            }
        }
        if skipped {
            excluded += 1;
        }
        agree += usize::from(ok);
    }
    Outcome {
        pass: agree == inputs,
        detail: format!(
            "{agree}/{inputs} identical ({excluded} with a type excluded by hypothesis){}, {}",
            if notes.is_empty() {
                String::new()
            } else {
                format!(" [{}]", notes.join("; "))
            },
            secs(started.elapsed())
        ),
    }
}

fn criterion_7(pool: &mut Pool) -> Outcome {
    let started = Instant::now();
    let mut ok = 0;
    let mut notes = Vec::new();
    let mut worst_drift: f64 = 0.0;
    let mut worst_closure: f64 = 0.0;
    for item in &pool.0 {
        let opts = verify_opts(item.policy);
        let first = verify_candidate(&item.h, &item.candidate, &opts);
        let mut good = first.verified()
            && first.record.max_level_drift <= 1e-8
            && first.record.closure_error <= 1e-6;
        worst_drift = worst_drift.max(first.record.max_level_drift);
        worst_closure = worst_closure.max(first.record.closure_error);
        for p in &item.candidate.seam_points {
            for q in [p.clone(), p.partner()] {
                let v = verify_from(&item.h, &item.candidate, &q, &opts);
                worst_drift = worst_drift.max(v.record.max_level_drift);
                worst_closure = worst_closure.max(v.record.closure_error);
                good &= v.verified()
                    && v.record.word == first.record.word
                    && v.record.max_level_drift <= 1e-8
                    && v.record.closure_error <= 1e-6;
            }
        }
        if good {
            ok += 1;
        } else if notes.len() < 3 {
            notes.push(format!(
                "{} {:?}",
                item.source,
                item.candidate.seam.values()
            ));
        }
    }
    let total = pool.0.len();
    Outcome {
        pass: total > 0 && ok == total,
        detail: format!(
            "{ok}/{total} verified cycles conserve level and re-trace to the same word \
             (max drift {worst_drift:.1e}, max closure {worst_closure:.1e}){}, {}",
            if notes.is_empty() {
                String::new()
            } else {
                format!(" [{}]", notes.join("; "))
            },
            secs(started.elapsed())
        ),
    }
}

type Criterion = fn(&mut Pool) -> Outcome;

fn main() {
    let mut pool = Pool::default();
    let criteria: [(&str, Criterion); 7] = [
        ("six two-loop cycles of the cubic", criterion_1),
        ("vertical-lines family n = 2..8", criterion_2),
        ("single-loop closed form vs geometry", criterion_3),
        ("two-loop closed-form consistency", criterion_4),
        ("bound stress n = 2, 3, 4", criterion_5),
        ("enumeration vs grid oracle", criterion_6),
        ("conservation, closure and re-trace", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = run(&mut pool);
        failed += usize::from(!outcome.pass);
        println!(
            "{} {} {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

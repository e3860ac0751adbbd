use proptest::prelude::*;

use torus_cycles::enumeration::{
    delta_p, enumerate, enumerate_aba, enumerate_bb, pc_polynomial, quadratic_aba_analyze,
    quadratic_bb_conditions, quadratic_polynomial, radicand, CycleType, EnumerationOptions,
};
use torus_cycles::mode::Mode;
use torus_cycles::poly::roots::{real_roots, RootOptions};
use torus_cycles::poly::scalar::{rat, sign, to_f64, Scalar};
use torus_cycles::poly::BivariatePolynomial;
use torus_cycles::report::{
    analyze, parse_polynomial_file, polynomial_to_file, random_polynomial, trial_rng,
    AnalysisOptions,
};
use torus_cycles::switching::{classify_edge_point, Edge, EdgePoint};
use torus_cycles::verification::{
    brute_force_cycle_scan, hausdorff, trace_level_curve, verify_candidate, verify_from,
    TraceOptions, VerifyOptions, VerifyPolicy,
};

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn edge() -> impl Strategy<Value = Edge> {
    prop_oneof![
        Just(Edge::Bottom),
        Just(Edge::Top),
        Just(Edge::Left),
        Just(Edge::Right)
    ]
}

fn random_h(max_degree: u32) -> impl Strategy<Value = BivariatePolynomial> {
    (1..=max_degree, any::<u64>())
        .prop_map(|(n, seed)| random_polynomial(&mut trial_rng(seed, 0), n))
}

fn interior(values: &[f64]) -> bool {
    values.iter().all(|v| *v > 1e-3 && *v < 1.0 - 1e-3)
}

fn matched(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.iter().filter(|s| interior(s)).all(|s| {
        b.iter()
            .any(|t| s.iter().zip(t).all(|(u, v)| (u - v).abs() <= tol))
    })
}

fn pairs_interior(a: f64, b: f64, c: f64) -> bool {
    let rad = b.powi(4) - 8.0 * a * b * b * c + 4.0 * a * c * (a + c).powi(2);
    let den = 2.0 * b * (a - c);
    if rad < 0.0 || den == 0.0 {
        return false;
    }
    let q = rad.sqrt();
    let (nx, ny) = (2.0 * c * (a + c) - b * b, b * b - 2.0 * a * (a + c));
    [q, -q].iter().all(|s| {
        let (x, y) = ((nx + s) / den, (ny - s) / den);
        x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0
    })
}

/// Quadratics with two interior two-loop solution pairs: `c` is picked from the
/// admissible values on a grid for the drawn `(a, b)`.
fn aba_quadratic() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (nonzero_rational(), nonzero_rational(), any::<usize>()).prop_filter_map(
        "no admissible c",
        |(a, b, pick)| {
            let (af, bf) = (to_f64(&a), to_f64(&b));
            let admissible: Vec<i64> = (-400i64..=400)
                .filter(|k| pairs_interior(af, bf, *k as f64 / 40.0))
                .collect();
            if admissible.is_empty() {
                return None;
            }
            let c = rat(admissible[pick % admissible.len()], 40);
            quadratic_aba_analyze(&a, &b, &c)
                .ok()?
                .exists
                .then_some((a, b, c))
        },
    )
}

/// Single-loop quadratics that the closed form says carry a cycle.
fn bb_quadratic() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (nonzero_rational(), nonzero_rational(), nonzero_rational())
        .prop_filter("conditions hold", |(a, b, c)| {
            quadratic_bb_conditions(a, b, c).exists
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partner_is_an_involution(e in edge(), t in 0.0f64..=1.0) {
        let p = EdgePoint::new(e, t).unwrap();
        prop_assert_eq!(p.partner().partner(), p.clone());
        prop_assert_ne!(p.partner().edge, p.edge);
    }

    #[test]
    fn classification_is_shared_by_partners(h in random_h(4), e in edge(), num in 1i64..64) {
        let p = EdgePoint::exact(e, rat(num, 64)).unwrap();
        let here = classify_edge_point(&h, &p, Mode::Exact).unwrap();
        let there = classify_edge_point(&h, &p.partner(), Mode::Exact).unwrap();
        prop_assert_eq!(here, there);
    }

    #[test]
    fn radicand_is_pc_at_c(a in nonzero_rational(), b in nonzero_rational(), c in rational()) {
        prop_assert_eq!(radicand(&a, &b, &c), pc_polynomial(&a, &b).eval(&c));
    }

    #[test]
    fn discriminant_sign_counts_real_roots(a in nonzero_rational(), b in nonzero_rational()) {
        let roots = real_roots(&pc_polynomial(&a, &b), &RootOptions::default()).unwrap();
        let distinct = roots.len();
        match sign(&delta_p(&a, &b)) {
            1 => prop_assert_eq!(distinct, 3),
            -1 => prop_assert_eq!(distinct, 1),
            _ => prop_assert!(distinct < 3),
        }
    }

    #[test]
    fn accepted_counts_respect_bounds(h in random_h(5)) {
        let n = h.degree();
        for t in CycleType::ALL {
            if let Ok(e) = enumerate(&h, t, &EnumerationOptions::default()) {
                prop_assert!(e.accepted_count() <= t.bound(n));
            }
        }
    }

    #[test]
    fn echo_round_trips(h in random_h(5)) {
        let text = serde_json::to_string(&polynomial_to_file(&h, Some("p"))).unwrap();
        let parsed = parse_polynomial_file(&text).unwrap();
        prop_assert_eq!(parsed.polynomial, h);
        prop_assert_eq!(parsed.label.as_deref(), Some("p"));
    }

    #[test]
    fn single_loop_levels_are_conserved((a, b, c) in bb_quadratic()) {
        let h = quadratic_polynomial(&a, &b, &c);
        let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
        prop_assert_eq!(e.accepted_count(), 1);
        let opts = VerifyOptions { policy: VerifyPolicy::LevelSet, ..VerifyOptions::default() };
        let v = verify_candidate(&h, e.accepted().next().unwrap(), &opts);
        prop_assert!(v.verified(), "{:?}", v.record);
        prop_assert!(v.record.max_level_drift <= 1e-8);
        prop_assert!(v.record.closure_error <= 1e-6);
    }

    #[test]
    fn reversed_trace_covers_the_same_cycle((a, b, c) in bb_quadratic()) {
        let h = quadratic_polynomial(&a, &b, &c);
        let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
        let start = e.accepted().next().unwrap().start().clone();
        let hf = h.to_float();
        let forward = trace_level_curve(&hf, &start, &TraceOptions::default()).unwrap();
        let backward = trace_level_curve(&hf, &start, &TraceOptions { reverse: true, ..TraceOptions::default() }).unwrap();
        prop_assert!(hausdorff(&forward, &backward) <= 1e-6);
        prop_assert_eq!(forward.word, backward.word);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn single_loop_enumeration_matches_the_oracle(h in random_h(4)) {
        let oracle = brute_force_cycle_scan(&h, 64);
        for t in [CycleType::Bb, CycleType::Aa] {
            let Ok(e) = enumerate(&h, t, &EnumerationOptions::default()) else { continue };
            let ours: Vec<Vec<f64>> = e.candidates.iter().map(|c| c.seam.values()).collect();
            let theirs: Vec<Vec<f64>> = oracle.iter().filter(|o| o.cycle_type == t).map(|o| o.seam.clone()).collect();
            prop_assert!(matched(&ours, &theirs, 1e-6), "{t}: {ours:?} vs {theirs:?}");
            prop_assert!(matched(&theirs, &ours, 1e-6), "{t}: {theirs:?} vs {ours:?}");
        }
    }

    #[test]
    fn two_loop_words_do_not_depend_on_the_start((a, b, c) in aba_quadratic()) {
        let h = quadratic_polynomial(&a, &b, &c);
        let e = enumerate_aba(&h, &EnumerationOptions::default()).unwrap();
        for cand in e.accepted() {
            let first = verify_candidate(&h, cand, &VerifyOptions::default());
            if !first.verified() {
                continue;
            }
            for p in &cand.seam_points {
                let v = verify_from(&h, cand, p, &VerifyOptions::default());
                prop_assert!(v.verified(), "{:?}", v.record);
                prop_assert_eq!(&v.record.word, &first.record.word);
            }
        }
    }

    #[test]
    fn analysis_is_deterministic(h in random_h(3)) {
        let opts = AnalysisOptions::default();
        let (Ok(r1), Ok(r2)) = (analyze(&h, None, &opts), analyze(&h, None, &opts)) else {
            return Ok(());
        };
        prop_assert_eq!(r1.to_json_without_timing().ok(), r2.to_json_without_timing().ok());
    }
}

use torus_cycles::enumeration::{
    enumerate_aa, enumerate_aba, enumerate_bab, enumerate_bb, quadratic_aba_analyze,
    quadratic_bb_conditions, quadratic_polynomial, CycleType, EnumerationOptions, Filter,
    FilterVerdict, Seam,
};
use torus_cycles::mode::Mode;
use torus_cycles::poly::scalar::{int, rat};
use torus_cycles::poly::BivariatePolynomial;
use torus_cycles::report::{family_polynomial, six_cycle_cubic};
use torus_cycles::verification::{
    brute_force_cycle_scan, verify_candidate, VerifyOptions, VerifyPolicy,
};

const SIX_PAIRS: [(f64, f64); 6] = [
    (0.25, 0.516),
    (0.33, 0.490),
    (0.41, 0.494),
    (0.49, 0.507),
    (0.57, 0.511),
    (0.65, 0.485),
];

fn sorted_pairs(values: impl Iterator<Item = Vec<f64>>) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = values.map(|s| (s[0], s[1])).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn cubic_has_six_two_loop_solutions() {
    let h = six_cycle_cubic();
    let e = enumerate_aba(&h, &EnumerationOptions::default()).unwrap();
    assert_eq!(e.accepted_count(), 6);
    let got = sorted_pairs(e.accepted().map(|c| c.seam.values()));
    for (g, want) in got.iter().zip(SIX_PAIRS) {
        assert!(
            (g.0 - want.0).abs() < 5e-3 && (g.1 - want.1).abs() < 5e-3,
            "{g:?} vs {want:?}"
        );
    }
}

#[test]
fn cubic_bab_system_matches_aba() {
    let h = six_cycle_cubic();
    let opts = EnumerationOptions::default();
    let aba = enumerate_aba(&h, &opts).unwrap();
    let bab = enumerate_bab(&h, &opts).unwrap();
    assert!(bab.flags.same_system_as_aba);
    let (p, q) = (
        sorted_pairs(aba.accepted().map(|c| c.seam.values())),
        sorted_pairs(bab.accepted().map(|c| c.seam.values())),
    );
    assert_eq!(p.len(), q.len());
    for (a, b) in p.iter().zip(&q) {
        assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
    }
}

#[test]
fn cubic_outer_pairs_trace_as_two_loop_cycles() {
    let h = six_cycle_cubic();
    let e = enumerate_aba(&h, &EnumerationOptions::default()).unwrap();
    let mut verified = Vec::new();
    for c in e.accepted() {
        let v = verify_candidate(&h, c, &VerifyOptions::default());
        if v.verified() {
            assert_eq!(v.record.word, "ab");
            verified.push(c.seam.values()[0]);
        } else {
            assert_eq!(v.record.failure.as_deref(), Some("ExtraEdgeIncidence"));
        }
    }
    verified.sort_by(f64::total_cmp);
    assert_eq!(verified.len(), 2);
    assert!((verified[0] - 0.25).abs() < 5e-3 && (verified[1] - 0.65).abs() < 5e-3);
}

#[test]
fn cubic_oracle_finds_the_same_pairs() {
    let h = six_cycle_cubic();
    let oracle = brute_force_cycle_scan(&h, 512);
    let got = sorted_pairs(
        oracle
            .iter()
            .filter(|o| o.cycle_type == CycleType::Aba)
            .map(|o| o.seam.clone()),
    );
    assert_eq!(got.len(), 6);
    for (g, want) in got.iter().zip(SIX_PAIRS) {
        assert!((g.0 - want.0).abs() < 5e-3 && (g.1 - want.1).abs() < 5e-3);
    }
}

#[test]
fn family_seams_are_exact_fractions() {
    for n in 2..=8u32 {
        let h = family_polynomial(n);
        let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
        assert_eq!(e.candidates.len(), (n - 1) as usize, "n = {n}");
        for (k, c) in e.candidates.iter().enumerate() {
            let Seam::Single { coordinate } = &c.seam else {
                panic!("single seam expected")
            };
            assert_eq!(coordinate.exact, Some(rat(k as i64 + 1, n as i64)));
        }
    }
}

#[test]
fn family_first_line_is_not_transversal_for_small_n() {
    for n in [2u32, 3] {
        let h = family_polynomial(n);
        let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
        assert_eq!(
            e.candidates[0].verdict(Filter::Transversal),
            Some(FilterVerdict::Fail),
            "n = {n}"
        );
    }
}

#[test]
fn family_first_line_fails_verification_for_larger_n() {
    let h = family_polynomial(5);
    let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
    let first = &e.candidates[0];
    assert!(!verify_candidate(&h, first, &VerifyOptions::default()).verified());
}

#[test]
fn family_oracle_matches_lines() {
    let h = family_polynomial(4);
    let mut xs: Vec<f64> = brute_force_cycle_scan(&h, 512)
        .into_iter()
        .filter(|o| o.cycle_type == CycleType::Bb)
        .map(|o| o.seam[0])
        .collect();
    xs.sort_by(f64::total_cmp);
    assert_eq!(xs.len(), 3);
    for (x, want) in xs.iter().zip([0.25, 0.5, 0.75]) {
        assert!((x - want).abs() < 1e-9);
    }
}

#[test]
fn circle_has_no_cycles() {
    let h = quadratic_polynomial(&int(1), &int(0), &int(1));
    let opts = EnumerationOptions::default();
    assert_eq!(enumerate_bb(&h, &opts).unwrap().accepted_count(), 0);
    assert_eq!(enumerate_aa(&h, &opts).unwrap().accepted_count(), 0);
    assert!(brute_force_cycle_scan(&h, 128).is_empty());
}

#[test]
fn quadratic_vertical_loop_matches_closed_form() {
    let (a, b, c) = (int(1), int(2), int(-1));
    let conds = quadratic_bb_conditions(&a, &b, &c);
    assert!(conds.exists);
    let h = quadratic_polynomial(&a, &b, &c);
    let e = enumerate_bb(&h, &EnumerationOptions::default()).unwrap();
    assert_eq!(e.accepted_count(), 1);
    let cand = e.accepted().next().unwrap();
    let Seam::Single { coordinate } = &cand.seam else {
        panic!()
    };
    assert_eq!(
        coordinate.exact.as_ref(),
        Some(&conds.witness.as_ref().unwrap().x0)
    );
    let opts = VerifyOptions {
        policy: VerifyPolicy::LevelSet,
        ..VerifyOptions::default()
    };
    let v = verify_candidate(&h, cand, &opts);
    assert!(v.verified(), "{:?}", v.record);
    assert_eq!(v.record.word, "b");
}

#[test]
fn quadratic_two_loop_pairs_match_enumeration() {
    let (a, b, c) = (rat(-1, 1), rat(-1, 2), rat(-3, 10));
    let analysis = quadratic_aba_analyze(&a, &b, &c).unwrap();
    let h = quadratic_polynomial(&a, &b, &c);
    let e = enumerate_aba(&h, &EnumerationOptions::default()).unwrap();
    let interior: Vec<_> = analysis.solutions.iter().filter(|p| p.interior).collect();
    let got = sorted_pairs(e.accepted().map(|c| c.seam.values()));
    assert_eq!(got.len(), interior.len());
    for p in interior {
        assert!(got
            .iter()
            .any(|g| (g.0 - p.x).abs() < 1e-10 && (g.1 - p.y).abs() < 1e-10));
    }
}

#[test]
fn float_mode_agrees_on_the_cubic() {
    let h = six_cycle_cubic();
    let exact = enumerate_aba(&h, &EnumerationOptions::default()).unwrap();
    let float = enumerate_aba(&h, &EnumerationOptions::with_mode(Mode::Float)).unwrap();
    let (p, q) = (
        sorted_pairs(exact.accepted().map(|c| c.seam.values())),
        sorted_pairs(float.accepted().map(|c| c.seam.values())),
    );
    assert_eq!(p.len(), q.len());
    for (a, b) in p.iter().zip(&q) {
        assert!((a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8);
    }
}

#[test]
fn constant_term_is_rejected() {
    let h = &BivariatePolynomial::x() + &BivariatePolynomial::constant(int(1));
    assert!(enumerate_bb(&h, &EnumerationOptions::default()).is_err());
}

#[test]
fn two_loop_pair_near_a_fold_of_the_closing_curve() {
    let (a, b, c) = (rat(-7, 8), rat(11, 7), rat(-7, 4));
    let analysis = quadratic_aba_analyze(&a, &b, &c).unwrap();
    let want = analysis.solutions.iter().find(|p| p.interior).unwrap();
    let e = enumerate_aba(
        &quadratic_polynomial(&a, &b, &c),
        &EnumerationOptions::default(),
    )
    .unwrap();
    assert_eq!(e.candidates.len(), 1);
    let got = e.candidates[0].seam.values();
    assert!((got[0] - want.x).abs() < 1e-10 && (got[1] - want.y).abs() < 1e-10);
}

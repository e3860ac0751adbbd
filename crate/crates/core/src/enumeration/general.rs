//! Enumerators for arbitrary degree: one closing polynomial for aa/bb, a
//! two-equation closing system solved by resultants for aba/bab.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::candidate::{
    CycleCandidate, CycleType, Filter, FilterRecord, FilterVerdict, Seam, SeamCoordinate,
};
use crate::error::EnumerationError;
use crate::mode::Mode;
use crate::poly::roots::{
    real_roots_in_open_interval, refine_isolated_root, sign_at_isolated_root, IsolatedRoot,
    RootOptions,
};
use crate::poly::scalar::{self, Scalar};
use crate::poly::{
    common_points_at_infinity, resultant, BivariatePolynomial, Direction, FloatPoly2,
    UnivariatePolynomial, Variable,
};
use crate::switching::{class_from_signs, normal_polynomial, Edge, EdgePoint, FilippovClass};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnumerationOptions {
    pub mode: Mode,
    pub roots: RootOptions,
    /// Closing-equation residual accepted by the `closing_residual` filter.
    pub residual_tol: f64,
    /// Joint residual for accepting an `(x, y)` pairing after back-substitution.
    pub pairing_tol: f64,
    /// Lower bound on `|sin|` of the angle between the two closing curves' normals
    /// for an intersection to count as simple.
    pub simple_tol: f64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            mode: Mode::Exact,
            roots: RootOptions::default(),
            residual_tol: 1e-10,
            pairing_tol: 1e-9,
            simple_tol: 1e-8,
        }
    }
}

impl EnumerationOptions {
    pub fn with_mode(mode: Mode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EnumerationFlags {
    /// Both `a_{n,0}` and `a_{n,n}` vanish.
    pub leading_coefficients_vanish: bool,
    /// The projective closures of the two closing curves meet at infinity, so the
    /// affine count can fall short of the product of the degrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_at_infinity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eliminated: Option<Variable>,
    /// The bab closing system coincides with the aba one after relabelling.
    pub same_system_as_aba: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Enumeration {
    pub cycle_type: CycleType,
    pub degree: u32,
    pub bound: usize,
    pub closing_polynomials: Vec<String>,
    pub candidates: Vec<CycleCandidate>,
    pub flags: EnumerationFlags,
}

impl Enumeration {
    pub fn accepted(&self) -> impl Iterator<Item = &CycleCandidate> {
        self.candidates.iter().filter(|c| c.accepted())
    }

    pub fn accepted_count(&self) -> usize {
        self.accepted().count()
    }
}

fn check_hypotheses(h: &BivariatePolynomial) -> Result<u32, EnumerationError> {
    let n = h.degree();
    if n == 0 {
        return Err(EnumerationError::ZeroDegree);
    }
    let c = h.constant_term();
    if !c.is_zero() {
        return Err(EnumerationError::ConstantTermNonzero(
            scalar::format_scalar(&c),
        ));
    }
    Ok(n)
}

pub fn enumerate(
    h: &BivariatePolynomial,
    cycle_type: CycleType,
    opts: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    match cycle_type {
        CycleType::Bb => enumerate_bb(h, opts),
        CycleType::Aa => enumerate_aa(h, opts),
        CycleType::Aba => enumerate_aba(h, opts),
        CycleType::Bab => enumerate_bab(h, opts),
    }
}

/// Vertical loops: roots of `H(x,0) - H(x,1)` in `(0,1)`.
pub fn enumerate_bb(
    h: &BivariatePolynomial,
    opts: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    enumerate_single(h, Direction::Vertical, opts)
}

/// Horizontal loops: roots of `H(0,y) - H(1,y)` in `(0,1)`.
pub fn enumerate_aa(
    h: &BivariatePolynomial,
    opts: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    enumerate_single(h, Direction::Horizontal, opts)
}

fn relative_residual(p: &UnivariatePolynomial, t: &Scalar) -> f64 {
    let v = scalar::to_f64(&p.eval(t)).abs();
    if v == 0.0 {
        return 0.0;
    }
    let tf = scalar::to_f64(t).abs();
    let scale = p
        .coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * tf + scalar::to_f64(c).abs());
    if scale == 0.0 {
        v
    } else {
        v / scale
    }
}

/// Exact (or thresholded) sign of `f` at an isolated root of `sqf`.
fn sign_at_root(
    f: &UnivariatePolynomial,
    sqf: &UnivariatePolynomial,
    root: &IsolatedRoot,
    mode: Mode,
) -> i8 {
    match (mode, &root.exact) {
        (Mode::Exact, Some(t)) => f.sign_at(t),
        (Mode::Exact, None) => sign_at_isolated_root(f, sqf, &root.lo, &root.hi),
        (Mode::Float, _) => float_sign(f.eval_f64(root.value), mode.float_tangency_tolerance()),
    }
}

fn float_sign(v: f64, tol: f64) -> i8 {
    if v.abs() <= tol || v.is_nan() {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

fn edge_point(edge: Edge, c: &SeamCoordinate) -> EdgePoint {
    match &c.exact {
        Some(t) => EdgePoint::exact(edge, t.clone()).expect("seam coordinate inside [0,1]"),
        None => EdgePoint {
            edge,
            t: c.value,
            exact: None,
        },
    }
}

fn interior_record(ambiguous: bool) -> FilterRecord {
    if ambiguous {
        FilterRecord {
            filter: Filter::Interior,
            verdict: FilterVerdict::Ambiguous,
            detail: Some("seam coordinate within boundary_epsilon of the square's side".into()),
        }
    } else {
        FilterRecord {
            filter: Filter::Interior,
            verdict: FilterVerdict::Pass,
            detail: None,
        }
    }
}

fn pass_fail(filter: Filter, ok: bool, detail: Option<String>) -> FilterRecord {
    FilterRecord {
        filter,
        verdict: if ok {
            FilterVerdict::Pass
        } else {
            FilterVerdict::Fail
        },
        detail,
    }
}

fn transversal_record(classes: &[FilippovClass]) -> FilterRecord {
    let tangent: Vec<usize> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == FilippovClass::Tangency)
        .map(|(i, _)| i + 1)
        .collect();
    if tangent.is_empty() {
        pass_fail(Filter::Transversal, true, None)
    } else {
        pass_fail(
            Filter::Transversal,
            false,
            Some(format!(
                "normal component vanishes at seam point(s) {tangent:?}"
            )),
        )
    }
}

fn enumerate_single(
    h: &BivariatePolynomial,
    direction: Direction,
    opts: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    let n = check_hypotheses(h)?;
    let (cycle_type, seam_edge) = match direction {
        Direction::Vertical => (CycleType::Bb, Edge::Bottom),
        Direction::Horizontal => (CycleType::Aa, Edge::Left),
    };
    let partner_edge = seam_edge.opposite();
    let p = h.closing_difference(direction);
    if p.is_zero() {
        return Err(EnumerationError::DegenerateContinuum);
    }
    let roots = real_roots_in_open_interval(&p, &Scalar::zero(), &Scalar::one(), &opts.roots)?;
    let sqf = p.square_free_part();
    let n_seam = normal_polynomial(h, seam_edge);
    let n_partner = normal_polynomial(h, partner_edge);

    let mut candidates = Vec::with_capacity(roots.len());
    for root in &roots {
        let coordinate = SeamCoordinate {
            value: root.value,
            exact: root.exact.clone(),
            bracket: Some((root.lo.clone(), root.hi.clone())),
        };
        let t = root.rational_value();
        let (sx, sy) = seam_edge.exact_position(&t);
        let level_value = h.evaluate(&sx, &sy);
        let level = scalar::to_f64(&level_value);
        let exact_level = root.exact.as_ref().map(|_| level_value);
        let residual = if root.exact.is_some() {
            0.0
        } else {
            relative_residual(&p, &t)
        };

        // ν⁺ at the seam point and ν⁻ = -N_partner from the glued copy.
        let s_plus = sign_at_root(&n_seam, &sqf, root, opts.mode);
        let s_minus = -sign_at_root(&n_partner, &sqf, root, opts.mode);
        let class = class_from_signs(s_plus, s_minus);
        let partner_class = class_from_signs(-s_minus, -s_plus);

        let seam_points = vec![
            edge_point(seam_edge, &coordinate),
            edge_point(partner_edge, &coordinate),
        ];
        let seam_classes = vec![class, partner_class];
        let filters = vec![
            interior_record(root.boundary_ambiguous),
            pass_fail(
                Filter::ClosingResidual,
                residual <= opts.residual_tol,
                Some(format!("{residual:.3e}")),
            ),
            pass_fail(
                Filter::Simple,
                root.multiplicity == 1,
                (root.multiplicity > 1)
                    .then(|| format!("root of multiplicity {}", root.multiplicity)),
            ),
            transversal_record(&seam_classes),
        ];
        candidates.push(CycleCandidate {
            cycle_type,
            seam: Seam::Single { coordinate },
            levels: vec![level],
            exact_levels: vec![exact_level],
            multiplicity: root.multiplicity,
            closing_residual: residual,
            seam_points,
            seam_classes,
            filters,
        });
    }
    apply_distinct_levels(&mut candidates);
    let bound = cycle_type.bound(n);
    if candidates.len() > bound {
        return Err(EnumerationError::BoundViolation {
            cycle_type: cycle_type.to_string(),
            found: candidates.len(),
            bound,
        });
    }
    Ok(Enumeration {
        cycle_type,
        degree: n,
        bound,
        closing_polynomials: vec![p.to_string()],
        candidates,
        flags: EnumerationFlags::default(),
    })
}

fn levels_equal(a: &CycleCandidate, b: &CycleCandidate) -> bool {
    a.levels.len() == b.levels.len()
        && (0..a.levels.len()).all(|i| match (&a.exact_levels[i], &b.exact_levels[i]) {
            (Some(x), Some(y)) => x == y,
            _ => {
                let (x, y) = (a.levels[i], b.levels[i]);
                (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0)
            }
        })
}

fn apply_distinct_levels(candidates: &mut [CycleCandidate]) {
    let clashes: Vec<Vec<usize>> = (0..candidates.len())
        .map(|i| {
            (0..candidates.len())
                .filter(|&j| j != i && levels_equal(&candidates[i], &candidates[j]))
                .collect()
        })
        .collect();
    for (c, clash) in candidates.iter_mut().zip(clashes) {
        let detail =
            (!clash.is_empty()).then(|| format!("shares its level with candidate(s) {clash:?}"));
        c.record(
            Filter::DistinctLevels,
            if clash.is_empty() {
                FilterVerdict::Pass
            } else {
                FilterVerdict::Fail
            },
            detail,
        );
    }
}

/// `(P, Q, Q̃)` with `P = H(0,y) - H(x,1)`, `Q = H(x,0) - H(1,y)` and `Q̃ = P + Q`,
/// whose top-degree terms cancel.
pub fn aba_closing_system(
    h: &BivariatePolynomial,
) -> (
    BivariatePolynomial,
    BivariatePolynomial,
    BivariatePolynomial,
) {
    let from = BivariatePolynomial::from_univariate;
    let p = &from(&h.restrict_to_edge(Edge::Left), Variable::Y)
        - &from(&h.restrict_to_edge(Edge::Top), Variable::X);
    let q = &from(&h.restrict_to_edge(Edge::Bottom), Variable::X)
        - &from(&h.restrict_to_edge(Edge::Right), Variable::Y);
    let qt = &p + &q;
    (p, q, qt)
}

/// Two-loop cycles crossing left/right once and top/bottom once.
pub fn enumerate_aba(
    h: &BivariatePolynomial,
    opts: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    enumerate_two_loop(h, opts, CycleType::Aba)
}

/// The same closing system read with the horizontal and vertical seams exchanged:
/// solved as the aba system of `H(y, x)` and mapped back.
pub fn enumerate_bab(
    h: &BivariatePolynomial,
    opts: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    let swapped = enumerate_two_loop(&h.swap_xy(), opts, CycleType::Bab)?;
    let mut candidates: Vec<CycleCandidate> = Vec::with_capacity(swapped.candidates.len());
    for c in &swapped.candidates {
        let Seam::Pair { x, y } = &c.seam else {
            unreachable!()
        };
        candidates.push(build_two_loop_candidate(
            h,
            CycleType::Bab,
            y.clone(),
            x.clone(),
            c.multiplicity,
            opts,
            c.verdict(Filter::Simple) == Some(FilterVerdict::Pass),
            c.closing_residual,
            c.filters
                .iter()
                .find(|r| r.filter == Filter::Simple)
                .and_then(|r| r.detail.clone()),
            c.verdict(Filter::Interior) == Some(FilterVerdict::Ambiguous),
        ));
    }
    sort_pairs(&mut candidates);
    apply_distinct_levels(&mut candidates);
    let (p, _, qt) = aba_closing_system(h);
    Ok(Enumeration {
        cycle_type: CycleType::Bab,
        closing_polynomials: vec![p.to_string(), qt.to_string()],
        candidates,
        flags: EnumerationFlags {
            same_system_as_aba: same_system_as_aba(h),
            ..swapped.flags
        },
        ..swapped
    })
}

/// Whether the swapped system `{P', Q̃'}` of `H(y,x)`, mapped back, is `{Q, Q̃}`
/// and hence has the same zero set as `{P, Q̃}`.
fn same_system_as_aba(h: &BivariatePolynomial) -> bool {
    let (p, _, qt) = aba_closing_system(h);
    let (ps, _, qts) = aba_closing_system(&h.swap_xy());
    qts.swap_xy() == qt && ps.swap_xy() == &qt - &p
}

fn sort_pairs(candidates: &mut [CycleCandidate]) {
    candidates.sort_by(|a, b| {
        let (va, vb) = (a.seam.values(), b.seam.values());
        va.partial_cmp(&vb).unwrap_or(std::cmp::Ordering::Equal)
    });
}

struct RawSolution {
    x: SeamCoordinate,
    y: SeamCoordinate,
    multiplicity: usize,
    residual: f64,
    ambiguous: bool,
}

fn enumerate_two_loop(
    h: &BivariatePolynomial,
    opts: &EnumerationOptions,
    cycle_type: CycleType,
) -> Result<Enumeration, EnumerationError> {
    let n = check_hypotheses(h)?;
    let leading_coefficients_vanish = h.term(n, 0).is_zero() && h.term(n, n).is_zero();
    let (p, _, qt) = aba_closing_system(h);
    if p.is_zero() || qt.is_zero() {
        return Err(EnumerationError::CommonComponent);
    }
    let at_infinity = common_points_at_infinity(&p, n, &qt, n - 1)?;
    let eliminate_y = p.degree_in_x() == 0 && qt.degree_in_x() == 0;
    let solutions = if eliminate_y {
        solve_by_eliminating_x(&p.swap_xy(), &qt.swap_xy(), opts)?
            .into_iter()
            .map(|s| RawSolution {
                x: s.y,
                y: s.x,
                ..s
            })
            .collect()
    } else {
        solve_by_eliminating_x(&p, &qt, opts)?
    };

    let pf = p.to_float();
    let qf = qt.to_float();
    let mut candidates: Vec<CycleCandidate> = solutions
        .into_iter()
        .map(|s| {
            let (simple, detail) =
                simple_intersection(&pf, &qf, s.x.value, s.y.value, opts.simple_tol);
            let detail = detail.or_else(|| {
                (s.multiplicity > 1)
                    .then(|| format!("resultant root of multiplicity {}", s.multiplicity))
            });
            build_two_loop_candidate(
                h,
                cycle_type,
                s.x,
                s.y,
                s.multiplicity,
                opts,
                simple,
                s.residual,
                detail,
                s.ambiguous,
            )
        })
        .collect();
    sort_pairs(&mut candidates);
    apply_distinct_levels(&mut candidates);

    let bound = cycle_type.bound(n);
    if candidates.len() > bound {
        return Err(EnumerationError::BoundViolation {
            cycle_type: cycle_type.to_string(),
            found: candidates.len(),
            bound,
        });
    }
    Ok(Enumeration {
        cycle_type,
        degree: n,
        bound,
        closing_polynomials: vec![p.to_string(), qt.to_string()],
        candidates,
        flags: EnumerationFlags {
            leading_coefficients_vanish,
            points_at_infinity: Some(at_infinity),
            eliminated: Some(if eliminate_y {
                Variable::Y
            } else {
                Variable::X
            }),
            same_system_as_aba: cycle_type == CycleType::Bab,
        },
    })
}

/// `|sin θ|` between the normals of the two closing curves at the intersection.
fn simple_intersection(
    p: &FloatPoly2,
    q: &FloatPoly2,
    x: f64,
    y: f64,
    tol: f64,
) -> (bool, Option<String>) {
    let (px, py) = p.grad(x, y);
    let (qx, qy) = q.grad(x, y);
    let norms = px.hypot(py) * qx.hypot(qy);
    if norms == 0.0 {
        return (
            false,
            Some("a closing curve is singular at the intersection".into()),
        );
    }
    let sin = (px * qy - py * qx).abs() / norms;
    if sin > tol {
        (true, None)
    } else {
        (
            false,
            Some(format!("curves meet tangentially (|sin| = {sin:.3e})")),
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn build_two_loop_candidate(
    h: &BivariatePolynomial,
    cycle_type: CycleType,
    x: SeamCoordinate,
    y: SeamCoordinate,
    multiplicity: usize,
    opts: &EnumerationOptions,
    simple: bool,
    residual: f64,
    simple_detail: Option<String>,
    ambiguous: bool,
) -> CycleCandidate {
    let exact_pair = match (&x.exact, &y.exact) {
        (Some(a), Some(b)) => Some((a.clone(), b.clone())),
        _ => None,
    };
    let (levels, exact_levels) = match &exact_pair {
        Some((ex, ey)) => {
            let k1 = h.evaluate(&Scalar::zero(), ey);
            let k2 = h.evaluate(ex, &Scalar::zero());
            (
                vec![scalar::to_f64(&k1), scalar::to_f64(&k2)],
                vec![Some(k1), Some(k2)],
            )
        }
        None => {
            let f = h.to_float();
            (
                vec![f.eval(0.0, y.value), f.eval(x.value, 0.0)],
                vec![None, None],
            )
        }
    };

    // p1 = (0,y), p2 = (x,1), p3 = (x,0), p4 = (1,y).
    let p1 = edge_point(Edge::Left, &y);
    let p2 = edge_point(Edge::Top, &x);
    let signs = |e: &EdgePoint| -> (i8, i8) {
        let plus_poly = normal_polynomial(h, e.edge);
        let minus_poly = normal_polynomial(h, e.edge.opposite());
        match (opts.mode, &e.exact) {
            (Mode::Exact, Some(t)) => (plus_poly.sign_at(t), -minus_poly.sign_at(t)),
            _ => {
                let tol = opts.mode.float_tangency_tolerance();
                (
                    float_sign(plus_poly.eval_f64(e.t), tol),
                    -float_sign(minus_poly.eval_f64(e.t), tol),
                )
            }
        }
    };
    let (a_plus, a_minus) = signs(&p1);
    let (b_plus, b_minus) = signs(&p2);
    let seam_classes = vec![
        class_from_signs(a_plus, a_minus),
        class_from_signs(b_plus, b_minus),
        class_from_signs(-b_minus, -b_plus),
        class_from_signs(-a_minus, -a_plus),
    ];
    let seam_points = vec![p1.clone(), p2.clone(), p2.partner(), p1.partner()];
    let filters = vec![
        interior_record(ambiguous),
        pass_fail(
            Filter::ClosingResidual,
            residual <= opts.residual_tol,
            Some(format!("{residual:.3e}")),
        ),
        pass_fail(Filter::Simple, simple, simple_detail),
        transversal_record(&seam_classes),
    ];
    CycleCandidate {
        cycle_type,
        seam: Seam::Pair { x, y },
        levels,
        exact_levels,
        multiplicity,
        closing_residual: residual,
        seam_points,
        seam_classes,
        filters,
    }
}

/// Relative residual `|f| / Σ|c_ij||x|^i|y|^j`.
fn rel(f: &FloatPoly2, x: f64, y: f64) -> f64 {
    let v = f.eval(x, y).abs();
    let s = f.abs_eval(x, y);
    if v == 0.0 {
        0.0
    } else if s == 0.0 {
        v
    } else {
        v / s
    }
}

/// Newton on `(P, Q) = 0` from `(x, y)`; returns the refined point when it
/// lowers the joint residual.
fn polish(p: &FloatPoly2, q: &FloatPoly2, x: f64, y: f64) -> (f64, f64) {
    let (mut bx, mut by) = (x, y);
    let mut best = rel(p, x, y).max(rel(q, x, y));
    let (mut cx, mut cy) = (x, y);
    for _ in 0..8 {
        let (fp, fq) = (p.eval(cx, cy), q.eval(cx, cy));
        let (px, py) = p.grad(cx, cy);
        let (qx, qy) = q.grad(cx, cy);
        let det = px * qy - py * qx;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (fp * qy - fq * py) / det;
        let dy = (px * fq - qx * fp) / det;
        cx -= dx;
        cy -= dy;
        if (cx - x).abs() > 1e-6 || (cy - y).abs() > 1e-6 {
            break;
        }
        let r = rel(p, cx, cy).max(rel(q, cx, cy));
        if r < best || (r == best && dx.abs().max(dy.abs()) > 0.0) {
            best = r;
            bx = cx;
            by = cy;
        }
        if dx.abs().max(dy.abs()) <= 1e-17 {
            break;
        }
    }
    (bx, by)
}

/// Common zeros of `p` and `q` in `(0,1)²`, projecting onto `y` with the
/// resultant in `x` and pairing each `y` with the matching `x` roots.
fn solve_by_eliminating_x(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    opts: &EnumerationOptions,
) -> Result<Vec<RawSolution>, EnumerationError> {
    let r = resultant(p, q, Variable::X).map_err(|e| match e {
        crate::error::PolyError::CommonComponent => EnumerationError::CommonComponent,
        other => other.into(),
    })?;
    let zero = Scalar::zero();
    let one = Scalar::one();
    let y_roots = if r.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        real_roots_in_open_interval(&r, &zero, &one, &opts.roots)?
    };
    let pf = p.to_float();
    let qf = q.to_float();
    let mut out = Vec::new();
    // Back-substitution loses up to half the digits of y near a fold of either
    // curve, so y is pinned far below the working tolerance first.
    let fine = Scalar::new(1.into(), BigInt::from(10u32).pow(30u32));
    for ry in &y_roots {
        let ry = &refine_isolated_root(&r, ry, &fine);
        let y_rat = ry.rational_value();
        let px = p.at_y(&y_rat);
        let qx = q.at_y(&y_rat);
        let (base, other, other_f) = if px.degree().unwrap_or(0) > 0 {
            (&px, q, &qf)
        } else if qx.degree().unwrap_or(0) > 0 {
            (&qx, p, &pf)
        } else {
            continue;
        };
        let x_roots = real_roots_in_open_interval(base, &zero, &one, &opts.roots)?;
        for rx in &x_roots {
            if let (Some(ex), Some(ey)) = (&rx.exact, &ry.exact) {
                if other.evaluate(ex, ey).is_zero() {
                    out.push(RawSolution {
                        x: SeamCoordinate::exact(ex.clone()),
                        y: SeamCoordinate::exact(ey.clone()),
                        multiplicity: ry.multiplicity,
                        residual: 0.0,
                        ambiguous: rx.boundary_ambiguous || ry.boundary_ambiguous,
                    });
                    continue;
                }
            }
            if rel(other_f, rx.value, ry.value) > opts.pairing_tol {
                continue;
            }
            let (xv, yv) = polish(&pf, &qf, rx.value, ry.value);
            let residual = rel(&pf, xv, yv).max(rel(&qf, xv, yv));
            out.push(RawSolution {
                x: SeamCoordinate {
                    value: xv,
                    exact: None,
                    bracket: Some((rx.lo.clone(), rx.hi.clone())),
                },
                y: SeamCoordinate {
                    value: yv,
                    exact: None,
                    bracket: Some((ry.lo.clone(), ry.hi.clone())),
                },
                multiplicity: ry.multiplicity,
                residual,
                ambiguous: rx.boundary_ambiguous || ry.boundary_ambiguous,
            });
        }
    }
    Ok(out)
}

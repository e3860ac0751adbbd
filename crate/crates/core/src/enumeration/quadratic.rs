//! Closed-form criteria for quadratic integrals `H = a x² + b x y + c y²`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::EnumerationError;
use crate::poly::roots::{real_roots, RootOptions};
use crate::poly::scalar::{self, Scalar};
use crate::poly::{BivariatePolynomial, UnivariatePolynomial, Variable};

pub fn quadratic_polynomial(a: &Scalar, b: &Scalar, c: &Scalar) -> BivariatePolynomial {
    BivariatePolynomial::from_terms([(2, 0, a.clone()), (2, 1, b.clone()), (2, 2, c.clone())])
        .expect("valid quadratic terms")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BbWitness {
    #[serde(serialize_with = "scalar::serialize")]
    pub x0: Scalar,
    #[serde(serialize_with = "scalar::serialize")]
    pub level: Scalar,
}

/// Truth table of the single-vertical-loop criteria.
///
/// Conditions (a) and (c) are used as stated. Conditions (b) and (d) are reported
/// twice: in their stated form and in the form that matches the geometry of the
/// level set. `exists` is the conjunction using the geometric forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticBbConditions {
    #[serde(serialize_with = "scalar::serialize")]
    pub a: Scalar,
    #[serde(serialize_with = "scalar::serialize")]
    pub b: Scalar,
    #[serde(serialize_with = "scalar::serialize")]
    pub c: Scalar,
    /// `b ≠ 0, c ≠ 0, bc < 0, |b| > |c|`: the seam `x₀ = -c/b` lies in `(0,1)`.
    pub cond_a: bool,
    /// `(ac - b²)(a + b - c)/b ≤ 0`.
    pub cond_b_as_stated: bool,
    /// `(ac - b²)(b² + ab - ac) < 0`: the second root of the top-edge restriction
    /// `x₁ = (ac - b²)/(ab)` lies outside `[0,1]`.
    pub cond_b: bool,
    /// `ac < 0` or `ac > b²`: the level does not reach the left edge.
    pub cond_c: bool,
    /// `Δ ≥ 0 ⇒ a(b - c)(b² + ab - ac) ≥ 0`.
    pub cond_d_as_stated: bool,
    /// `Δ < 0`, or `a(b - c)(b² + ab - ac) > 0` unless `ac > 0` and `|b| < 2|c|`:
    /// the level does not reach the right edge.
    pub cond_d: bool,
    /// `Δ = b⁴ - 4ab²c + 4ac³`.
    #[serde(serialize_with = "scalar::serialize")]
    pub delta: Scalar,
    pub exists: bool,
    pub exists_as_stated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BbWitness>,
}

pub fn quadratic_bb_conditions(a: &Scalar, b: &Scalar, c: &Scalar) -> QuadraticBbConditions {
    let zero = Scalar::zero();
    let b2 = b * b;
    let ac = a * c;
    let cond_a = !b.is_zero() && !c.is_zero() && (b * c) < zero && b.abs() > c.abs();
    let cond_b_as_stated = !b.is_zero() && (&(&ac - &b2) * &(&(a + b) - c)) / b <= zero;
    let right_factor = &(&b2 + &(a * b)) - &ac;
    let cond_b = (&(&ac - &b2) * &right_factor) < zero;
    let cond_c = ac < zero || ac > b2;
    let delta = &(&(&b2 * &b2) - &(a * &b2 * c * Scalar::from_integer(4.into())))
        + &(a * c * c * c * Scalar::from_integer(4.into()));
    let d_product = a * &(b - c) * &right_factor;
    let cond_d_as_stated = delta < zero || d_product >= zero;
    let two_c = c.abs() * Scalar::from_integer(2.into());
    let cond_d = delta < zero || (d_product > zero && !(ac > zero && b.abs() < two_c));
    let exists = cond_a && cond_b && cond_c && cond_d;
    let exists_as_stated = cond_a && cond_b_as_stated && cond_c && cond_d_as_stated;
    let witness = exists.then(|| {
        let x0 = -(c / b);
        let level = a * &x0 * &x0;
        BbWitness { x0, level }
    });
    QuadraticBbConditions {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        cond_a,
        cond_b_as_stated,
        cond_b,
        cond_c,
        cond_d_as_stated,
        cond_d,
        delta,
        exists,
        exists_as_stated,
        witness,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbaCount {
    /// Radicand > 0: two distinct solution pairs.
    Two,
    /// Radicand = 0: one double solution, reported once.
    Degenerate,
    /// Radicand < 0: no real solution.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbaPair {
    pub x: f64,
    pub y: f64,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticAbaAnalysis {
    #[serde(serialize_with = "scalar::serialize")]
    pub a: Scalar,
    #[serde(serialize_with = "scalar::serialize")]
    pub b: Scalar,
    #[serde(serialize_with = "scalar::serialize")]
    pub c: Scalar,
    /// `b⁴ - 8ab²c + 4ac(a+c)²`.
    #[serde(serialize_with = "scalar::serialize")]
    pub radicand: Scalar,
    /// Square root of the radicand; `None` when it is negative.
    pub q: Option<f64>,
    pub count: AbaCount,
    /// `4ac³ + 8a²c² + (4a³ - 8ab²)c + b⁴` as a polynomial in `c`.
    #[serde(skip)]
    pub pc: UnivariatePolynomial,
    pub pc_coefficients: Vec<String>,
    /// `16a²b²(2a-b)²(2a+b)²(8a²-27b²)`.
    #[serde(serialize_with = "scalar::serialize")]
    pub delta_p: Scalar,
    /// Real roots of `pc` in increasing order, repeated by multiplicity.
    pub rho: Vec<f64>,
    pub solutions: Vec<AbaPair>,
    /// Radicand ≥ 0 and every solution pair interior.
    pub exists: bool,
}

/// `P(c)` for fixed `(a, b)`.
pub fn pc_polynomial(a: &Scalar, b: &Scalar) -> UnivariatePolynomial {
    let four = Scalar::from_integer(4.into());
    let eight = Scalar::from_integer(8.into());
    let b2 = b * b;
    UnivariatePolynomial::new(
        vec![
            &b2 * &b2,
            &(&four * a * a * a) - &(&eight * a * &b2),
            &eight * a * a,
            &four * a,
        ],
        Variable::C,
    )
}

pub fn delta_p(a: &Scalar, b: &Scalar) -> Scalar {
    let two = Scalar::from_integer(2.into());
    let sq = |v: Scalar| &v * &v;
    Scalar::from_integer(16.into())
        * sq(a.clone())
        * sq(b.clone())
        * sq(&two * a - b)
        * sq(&two * a + b)
        * (Scalar::from_integer(8.into()) * a * a - Scalar::from_integer(27.into()) * b * b)
}

pub fn radicand(a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    let b2 = b * b;
    let apc = a + c;
    &(&b2 * &b2) - &(Scalar::from_integer(8.into()) * a * &b2 * c)
        + Scalar::from_integer(4.into()) * a * c * &apc * &apc
}

fn ordered_roots(pc: &UnivariatePolynomial) -> Vec<f64> {
    if pc.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    real_roots(pc, &RootOptions::default())
        .expect("nonzero polynomial")
        .into_iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect()
}

pub fn quadratic_aba_analyze(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<QuadraticAbaAnalysis, EnumerationError> {
    if b.is_zero() || a == c {
        return Err(EnumerationError::DegenerateDenominator);
    }
    let rad = radicand(a, b, c);
    let pc = pc_polynomial(a, b);
    let rho = ordered_roots(&pc);
    let (q, count) = match scalar::sign(&rad) {
        1 => (Some(scalar::to_f64(&rad).sqrt()), AbaCount::Two),
        0 => (Some(0.0), AbaCount::Degenerate),
        _ => (None, AbaCount::None),
    };
    let two = Scalar::from_integer(2.into());
    let denom = scalar::to_f64(&(&two * b * &(a - c)));
    let num_x = scalar::to_f64(&(&(&two * c * &(a + c)) - &(b * b)));
    let num_y = scalar::to_f64(&(&(b * b) - &(&two * a * &(a + c))));
    let pair = |sign: f64, q: f64| {
        let x = (num_x + sign * q) / denom;
        let y = (num_y - sign * q) / denom;
        AbaPair {
            x,
            y,
            interior: x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0,
        }
    };
    let solutions = match (count, q) {
        (AbaCount::Two, Some(q)) => vec![pair(1.0, q), pair(-1.0, q)],
        (AbaCount::Degenerate, _) => vec![pair(1.0, 0.0)],
        _ => Vec::new(),
    };
    let exists = count != AbaCount::None && solutions.iter().all(|p| p.interior);
    Ok(QuadraticAbaAnalysis {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        radicand: rad,
        q,
        count,
        pc_coefficients: pc.coeffs().iter().map(scalar::format_scalar).collect(),
        pc,
        delta_p: delta_p(a, b),
        rho,
        solutions,
        exists,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AbaClause {
    /// `a < 0`, `2a < b < -(2/3)√(2/3)|a|`: `L < c ≤ ρ₁`.
    #[serde(rename = "case1(a)")]
    Case1A,
    /// `a < 0`, `-(2/3)√(2/3)|a| ≤ b < 0`: `L < c ≤ ρ₃`.
    #[serde(rename = "case1(b)")]
    Case1B,
    /// `a < 0`, `0 < b < -a/2`: `ρ₂ ≤ c < (-a² - ab + b²)/a`.
    #[serde(rename = "case1(c)")]
    Case1C,
    /// `a > 0`, `-a/2 < b < 0`: `(-a² - ab + b²)/a < c ≤ ρ₂`.
    #[serde(rename = "case2(a)")]
    Case2A,
    /// `a > 0`, `0 < b < 2a`: `ρ₁ ≤ c < U`.
    #[serde(rename = "case2(b)")]
    Case2B,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbaRegion {
    /// The clause whose `b`-range contains `b`, if any.
    pub b_range: Option<AbaClause>,
    /// The clause fully satisfied by `(a, b, c)`, if any.
    pub clause: Option<AbaClause>,
    /// Endpoints `(lower, upper)` of the `c`-interval of `b_range`, `NaN` when the
    /// referenced root does not exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_interval: Option<(f64, f64)>,
    pub exists: bool,
    /// The closed-form verdict: radicand ≥ 0 and both pairs interior.
    pub analysis_exists: bool,
    pub consistent: bool,
    pub rho: Vec<f64>,
}

/// Which existence clause `(a, b, c)` satisfies, evaluated verbatim in `f64`, with
/// the roots of `P(c)` taken from certified isolation. A clause that references a
/// missing root is unsatisfied.
pub fn quadratic_aba_region(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
) -> Result<AbaRegion, EnumerationError> {
    let analysis = quadratic_aba_analyze(a, b, c)?;
    let (af, bf, cf) = (scalar::to_f64(a), scalar::to_f64(b), scalar::to_f64(c));
    let rho = analysis.rho.clone();
    let root = |k: usize| rho.get(k - 1).copied().unwrap_or(f64::NAN);
    let s = (af * af + 2.0 * af * bf + 5.0 * bf * bf).sqrt();
    let lower_l = -0.5 * (af + bf) + 0.5 * s;
    let upper_u = 0.5 * (-af - bf) - 0.5 * s;
    let ratio = (-af * af - af * bf + bf * bf) / af;
    let threshold = -(2.0 / 3.0) * (2.0f64 / 3.0).sqrt() * af.abs();

    // (clause, lower, lower inclusive, upper, upper inclusive)
    let spec: Option<(AbaClause, f64, bool, f64, bool)> = if af < 0.0 {
        if 2.0 * af < bf && bf < threshold {
            Some((AbaClause::Case1A, lower_l, false, root(1), true))
        } else if threshold <= bf && bf < 0.0 {
            Some((AbaClause::Case1B, lower_l, false, root(3), true))
        } else if 0.0 < bf && bf < -af / 2.0 {
            Some((AbaClause::Case1C, root(2), true, ratio, false))
        } else {
            None
        }
    } else if af > 0.0 {
        if -af / 2.0 < bf && bf < 0.0 {
            Some((AbaClause::Case2A, ratio, false, root(2), true))
        } else if 0.0 < bf && bf < 2.0 * af {
            Some((AbaClause::Case2B, root(1), true, upper_u, false))
        } else {
            None
        }
    } else {
        None
    };

    let (b_range, clause, c_interval) = match spec {
        Some((cl, lo, lo_inc, hi, hi_inc)) => {
            let above = if lo_inc { cf >= lo } else { cf > lo };
            let below = if hi_inc { cf <= hi } else { cf < hi };
            let ok = lo.is_finite() && hi.is_finite() && above && below;
            (Some(cl), ok.then_some(cl), Some((lo, hi)))
        }
        None => (None, None, None),
    };
    let exists = clause.is_some();
    Ok(AbaRegion {
        b_range,
        clause,
        c_interval,
        exists,
        analysis_exists: analysis.exists,
        consistent: exists == analysis.exists,
        rho,
    })
}

//! Certified real-root isolation: Sturm counting, bisection, exact refinement.

use num_traits::{One, Zero};
use serde::Serialize;

use super::integer::IntPoly;
use super::scalar::{self, Scalar};
use super::univariate::UnivariatePolynomial;
use crate::error::PolyError;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_BOUNDARY_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootOptions {
    /// Final bracket width.
    pub tolerance: f64,
    /// Roots this close to an interval end are flagged as boundary-ambiguous.
    pub boundary_epsilon: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            boundary_epsilon: DEFAULT_BOUNDARY_EPSILON,
        }
    }
}

/// A real root together with a certified isolating bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoot {
    pub lo: Scalar,
    pub hi: Scalar,
    /// Set when the root was recognised as an exact rational.
    pub exact: Option<Scalar>,
    pub value: f64,
    pub multiplicity: usize,
    pub certified: bool,
    pub boundary_ambiguous: bool,
}

impl IsolatedRoot {
    pub fn width(&self) -> f64 {
        scalar::to_f64(&(&self.hi - &self.lo))
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity == 1
    }

    /// Exact value when known, otherwise the bracket midpoint (an exact rational).
    pub fn rational_value(&self) -> Scalar {
        self.exact
            .clone()
            .unwrap_or_else(|| (&self.lo + &self.hi) / scalar::int(2))
    }
}

/// Sturm chain of a square-free polynomial, kept as primitive integer polynomials.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    base: UnivariatePolynomial,
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &UnivariatePolynomial) -> Self {
        let first = IntPoly::from_rational(p);
        let mut next = first.derivative();
        let mut chain = vec![first];
        while !next.is_zero() {
            let r = chain.last().unwrap().negated_remainder(&next);
            chain.push(next);
            next = r;
        }
        Self {
            base: p.clone(),
            chain,
        }
    }

    pub fn base(&self) -> &UnivariatePolynomial {
        &self.base
    }

    /// Sign of the base polynomial at `t`.
    pub fn base_sign(&self, t: &Scalar) -> i8 {
        self.chain[0].sign_at(t)
    }

    /// Sign variations at `t`, zeros skipped.
    pub fn variations(&self, t: &Scalar) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = p.sign_at(t);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in the half-open interval `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Scalar, hi: &Scalar) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Scalar, hi: &Scalar) -> usize {
        let n = self.count_half_open(lo, hi);
        if self.base_sign(hi) == 0 {
            n - 1
        } else {
            n
        }
    }
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_count(p: &UnivariatePolynomial, lo: &Scalar, hi: &Scalar) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::IdenticallyZero);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    Ok(SturmSequence::new(&p.square_free_part()).count_open(lo, hi))
}

/// Every real root of `p` in the open interval `(lo, hi)`, sorted, with certified
/// disjoint brackets and multiplicities.
pub fn real_roots_in_open_interval(
    p: &UnivariatePolynomial,
    lo: &Scalar,
    hi: &Scalar,
    opts: &RootOptions,
) -> Result<Vec<IsolatedRoot>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::IdenticallyZero);
    }
    if lo >= hi {
        return Err(PolyError::EmptyInterval {
            lo: scalar::to_f64(lo),
            hi: scalar::to_f64(hi),
        });
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let factors = p.square_free_decomposition();
    let sqf = p.square_free_part();
    let seq = SturmSequence::new(&sqf);
    let tol = scalar::from_f64(opts.tolerance);
    let two = scalar::int(2);

    let mut found: Vec<(Scalar, Scalar, Option<Scalar>)> = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = seq.count_open(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            found.push(refine(&seq, a, b, &tol));
            continue;
        }
        let m = (&a + &b) / &two;
        if sqf.sign_at(&m) == 0 {
            found.push((m.clone(), m.clone(), Some(m.clone())));
        }
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));

    let lo_f = scalar::to_f64(lo);
    let hi_f = scalar::to_f64(hi);
    let roots = found
        .into_iter()
        .map(|(a, b, exact)| {
            let multiplicity = multiplicity_of(&factors, &a, &b, exact.as_ref());
            let value = match &exact {
                Some(e) => scalar::to_f64(e),
                None => scalar::to_f64(&((&a + &b) / &two)),
            };
            let boundary_ambiguous =
                value - lo_f <= opts.boundary_epsilon || hi_f - value <= opts.boundary_epsilon;
            IsolatedRoot {
                lo: a,
                hi: b,
                exact,
                value,
                multiplicity,
                certified: true,
                boundary_ambiguous,
            }
        })
        .collect();
    Ok(roots)
}

/// Roots in the closed interval `[lo, hi]`; endpoint roots come back exact.
pub fn real_roots_in_closed_interval(
    p: &UnivariatePolynomial,
    lo: &Scalar,
    hi: &Scalar,
    opts: &RootOptions,
) -> Result<Vec<IsolatedRoot>, PolyError> {
    let mut roots = real_roots_in_open_interval(p, lo, hi, opts)?;
    let factors = p.square_free_decomposition();
    for end in [lo, hi] {
        if p.sign_at(end) == 0 {
            roots.push(IsolatedRoot {
                lo: end.clone(),
                hi: end.clone(),
                exact: Some(end.clone()),
                value: scalar::to_f64(end),
                multiplicity: multiplicity_of(&factors, end, end, Some(end)),
                certified: true,
                boundary_ambiguous: true,
            });
        }
    }
    roots.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(roots)
}

/// All real roots (uses the Cauchy bound as the search interval).
pub fn real_roots(
    p: &UnivariatePolynomial,
    opts: &RootOptions,
) -> Result<Vec<IsolatedRoot>, PolyError> {
    let bound = p.root_bound() + Scalar::one();
    let mut roots = real_roots_in_open_interval(p, &-bound.clone(), &bound, opts)?;
    for r in &mut roots {
        r.boundary_ambiguous = false;
    }
    Ok(roots)
}

/// Shrinks a bracket holding exactly one root of `seq.base()` to width `tol`.
/// Narrows the bracket of a root of `p` previously isolated by this module.
pub fn refine_isolated_root(
    p: &UnivariatePolynomial,
    root: &IsolatedRoot,
    tolerance: &Scalar,
) -> IsolatedRoot {
    if root.exact.is_some() || &root.hi - &root.lo <= *tolerance {
        return root.clone();
    }
    let seq = SturmSequence::new(&p.square_free_part());
    let (lo, hi, exact) = refine(&seq, root.lo.clone(), root.hi.clone(), tolerance);
    let value = match &exact {
        Some(e) => scalar::to_f64(e),
        None => scalar::to_f64(&((&lo + &hi) / scalar::int(2))),
    };
    IsolatedRoot {
        lo,
        hi,
        exact,
        value,
        ..root.clone()
    }
}

fn refine(
    seq: &SturmSequence,
    mut a: Scalar,
    mut b: Scalar,
    tol: &Scalar,
) -> (Scalar, Scalar, Option<Scalar>) {
    let two = scalar::int(2);
    // Endpoints that are themselves roots defeat sign bisection; move them with Sturm counts.
    while seq.base_sign(&a) == 0 || seq.base_sign(&b) == 0 {
        let m = (&a + &b) / &two;
        if seq.base_sign(&m) == 0 {
            return (m.clone(), m.clone(), Some(m));
        }
        if seq.count_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    let sa = seq.base_sign(&a);
    while &b - &a > *tol {
        let m = (&a + &b) / &two;
        let sm = seq.base_sign(&m);
        if sm == 0 {
            return (m.clone(), m.clone(), Some(m));
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    let guess = scalar::simplest_between(&a, &b);
    if seq.base_sign(&guess) == 0 {
        return (a, b, Some(guess));
    }
    (a, b, None)
}

fn multiplicity_of(
    factors: &[(UnivariatePolynomial, usize)],
    a: &Scalar,
    b: &Scalar,
    exact: Option<&Scalar>,
) -> usize {
    for (f, i) in factors {
        let hit = match exact {
            Some(e) => f.eval(e).is_zero(),
            None => f.sign_at(a) * f.sign_at(b) < 0,
        };
        if hit {
            return *i;
        }
    }
    1
}

/// Exact sign of `f` at the unique root of the square-free `sqf` inside `(lo, hi)`.
/// `sqf` must change sign strictly across the bracket.
pub fn sign_at_isolated_root(
    f: &UnivariatePolynomial,
    sqf: &UnivariatePolynomial,
    lo: &Scalar,
    hi: &Scalar,
) -> i8 {
    if f.is_zero() {
        return 0;
    }
    if lo == hi {
        return f.sign_at(lo);
    }
    let g = sqf.gcd(f);
    if g.degree().unwrap_or(0) > 0 && SturmSequence::new(&g).count_open(lo, hi) > 0 {
        return 0;
    }
    if f.degree() == Some(0) {
        return f.sign_at(lo);
    }
    let fs = SturmSequence::new(&f.square_free_part());
    let two = scalar::int(2);
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let sa = sqf.sign_at(&a);
    loop {
        if fs.count_open(&a, &b) == 0 && f.sign_at(&a) != 0 && f.sign_at(&b) != 0 {
            return f.sign_at(&a);
        }
        let m = (&a + &b) / &two;
        let sm = sqf.sign_at(&m);
        if sm == 0 {
            return f.sign_at(&m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
}

/// Convenience: roots in `(0, 1)` with default options.
pub fn unit_interval_roots(p: &UnivariatePolynomial) -> Result<Vec<IsolatedRoot>, PolyError> {
    real_roots_in_open_interval(p, &Scalar::zero(), &Scalar::one(), &RootOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::{int, rat};
    use crate::poly::univariate::Variable;

    fn p(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64s(c, Variable::X)
    }

    #[test]
    fn linear_root() {
        // -(b x + c) with b = 1, c = -1/2
        let f = UnivariatePolynomial::new(vec![rat(1, 2), int(-1)], Variable::X);
        let roots = unit_interval_roots(&f).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(rat(1, 2)));
        assert_eq!(roots[0].value, 0.5);
    }

    #[test]
    fn root_outside_interval() {
        assert!(unit_interval_roots(&p(&[-2, 0, 1])).unwrap().is_empty());
        let all = real_roots(&p(&[-2, 0, 1]), &RootOptions::default()).unwrap();
        assert_eq!(all.len(), 2);
        assert!((all[1].value - 2f64.sqrt()).abs() < 1e-12);
        assert!(all[1].width() <= 1e-12);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            unit_interval_roots(&p(&[0])).unwrap_err(),
            PolyError::IdenticallyZero
        );
    }

    #[test]
    fn multiplicities_and_exact_rationals() {
        // (3x-1)^2 (x - 1/2) (x^2 - 1/2)
        let f = &(&(&p(&[-1, 3]) * &p(&[-1, 3])) * &p(&[-1, 2])) * &p(&[-1, 0, 2]);
        let roots = unit_interval_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].exact, Some(rat(1, 3)));
        assert_eq!(roots[0].multiplicity, 2);
        assert_eq!(roots[1].exact, Some(rat(1, 2)));
        assert_eq!(roots[1].multiplicity, 1);
        assert_eq!(roots[2].exact, None);
        assert!((roots[2].value - 0.5f64.sqrt()).abs() < 1e-12);
        for w in roots.windows(2) {
            assert!(w[0].hi <= w[1].lo, "brackets overlap");
        }
    }

    #[test]
    fn boundary_roots_are_flagged() {
        let eps = rat(1, 10_000_000_000);
        let f = UnivariatePolynomial::from_roots(&[eps, rat(1, 2)], Variable::X);
        let roots = unit_interval_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].boundary_ambiguous);
        assert!(!roots[1].boundary_ambiguous);
        let closed = real_roots_in_closed_interval(
            &p(&[0, -1, 1]),
            &int(0),
            &int(1),
            &RootOptions::default(),
        )
        .unwrap();
        assert_eq!(closed.len(), 2);
    }

    #[test]
    fn closely_spaced_roots_separate() {
        let f = UnivariatePolynomial::from_roots(
            &[rat(1, 3), rat(1, 3) + rat(1, 1_000_000_000), rat(2, 3)],
            Variable::X,
        );
        let roots = unit_interval_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(sturm_count(&f, &int(0), &int(1)).unwrap(), 3);
    }
}

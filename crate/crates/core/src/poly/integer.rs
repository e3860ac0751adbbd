//! Integer polynomials for fraction-free remainder sequences.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{self, Scalar};
use super::univariate::{UnivariatePolynomial, Variable};

/// Primitive integer multiple of a rational polynomial, with positive scaling so
/// signs are preserved. Coefficients from low to high degree.
#[derive(Debug, Clone)]
pub(crate) struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub(crate) fn from_rational(p: &UnivariatePolynomial) -> Self {
        let den = scalar::common_denominator(p.coeffs());
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self(coeffs).primitive()
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    /// Divided by the positive gcd of the coefficients.
    pub(crate) fn primitive(self) -> Self {
        let s = self.trim();
        let g = s.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return s;
        }
        Self(s.0.iter().map(|c| c / &g).collect())
    }

    pub(crate) fn derivative(&self) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
        .primitive()
    }

    /// `lc(g)^k · (self rem g)` for the number `k` of reduction steps, with `k`.
    fn pseudo_remainder(&self, g: &Self) -> (Self, usize) {
        let lc = g.0.last().expect("nonzero divisor");
        let dg = g.degree();
        let mut r = self.0.clone();
        let mut steps = 0;
        while r.len() > dg {
            let top = r.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dg;
            for c in r.iter_mut() {
                *c *= lc;
            }
            steps += 1;
            for (i, gc) in g.0[..dg].iter().enumerate() {
                r[i + shift] -= &top * gc;
            }
        }
        (Self(r).trim(), steps)
    }

    /// Positive multiple of `-(self rem g)`.
    pub(crate) fn negated_remainder(&self, g: &Self) -> Self {
        let (r, steps) = self.pseudo_remainder(g);
        let flipped = g.0.last().expect("nonzero divisor").sign() == Sign::Minus && steps % 2 == 1;
        let r = r.primitive();
        if flipped {
            r
        } else {
            Self(r.0.into_iter().map(|c| -c).collect())
        }
    }

    /// Greatest common divisor up to a constant factor (primitive remainder sequence).
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.pseudo_remainder(&b).0.primitive();
            a = b;
            b = r;
        }
        a
    }

    pub(crate) fn to_rational(&self, var: Variable) -> UnivariatePolynomial {
        UnivariatePolynomial::new(
            self.0
                .iter()
                .map(|c| Scalar::from_integer(c.clone()))
                .collect(),
            var,
        )
    }

    /// Sign of the polynomial at `t`, from `Σ cᵢ nⁱ d^(deg-i)` with `t = n/d`, `d > 0`.
    pub(crate) fn sign_at(&self, t: &Scalar) -> i8 {
        let (n, d) = (t.numer(), t.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        match acc.sign() {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::NoSign => 0,
        }
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::integer::IntPoly;
use super::scalar::{self, Scalar};

/// Name of the indeterminate, kept only for display and sanity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    X,
    Y,
    C,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::X => "x",
            Variable::Y => "y",
            Variable::C => "c",
        })
    }
}

/// Dense univariate polynomial with exact rational coefficients, lowest degree first.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial has an
/// empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Scalar>,
    var: Variable,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Scalar>, var: Variable) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs, var }
    }

    pub fn zero(var: Variable) -> Self {
        Self {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn one(var: Variable) -> Self {
        Self::constant(Scalar::one(), var)
    }

    pub fn constant(c: Scalar, var: Variable) -> Self {
        Self::new(vec![c], var)
    }

    /// The monomial `c t^degree`.
    pub fn monomial(c: Scalar, degree: usize, var: Variable) -> Self {
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs, var)
    }

    pub fn from_i64s(coeffs: &[i64], var: Variable) -> Self {
        Self::new(coeffs.iter().map(|&c| scalar::int(c)).collect(), var)
    }

    pub fn from_f64s(coeffs: &[f64], var: Variable) -> Self {
        Self::new(coeffs.iter().map(|&c| scalar::from_f64(c)).collect(), var)
    }

    /// `∏ (t - r)` over the given roots.
    pub fn from_roots(roots: &[Scalar], var: Variable) -> Self {
        roots.iter().fold(Self::one(var), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Scalar::one()], var)
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn with_var(mut self, var: Variable) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn sign_at(&self, t: &Scalar) -> i8 {
        scalar::sign(&self.eval(t))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(scalar::to_f64).collect()
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        horner_f64(&self.to_f64_coeffs(), t)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * scalar::int(i as i64))
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect(), self.var)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Divides by `|lc|`, which keeps every sign pattern intact.
    pub fn sign_normalized(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.abs().recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(self.var), Self::zero(self.var));
        };
        if nd < dd {
            return (Self::zero(self.var), self.clone());
        }
        let mut quot = vec![Scalar::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + k] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot, self.var), Self::new(rem, self.var))
    }

    /// Division known to be exact (remainder zero).
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        IntPoly::from_rational(self)
            .gcd(&IntPoly::from_rational(other))
            .to_rational(self.var)
            .monic()
    }

    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Yun's algorithm: `self = lc · ∏ fᵢ^i` with each `fᵢ` monic, square-free and
    /// pairwise coprime. Only non-constant factors are returned.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// `p(t + shift)`.
    pub fn shift(&self, shift: &Scalar) -> Self {
        // Horner in the polynomial ring: acc = acc·(t + s) + c.
        let lin = Self::new(vec![shift.clone(), Scalar::one()], self.var);
        let mut acc = Self::zero(self.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone(), self.var);
        }
        acc
    }

    /// Upper bound on the modulus of every complex root (Cauchy).
    pub fn root_bound(&self) -> Scalar {
        let Some(lc) = self.leading() else {
            return Scalar::zero();
        };
        let lc = lc.abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs() / &lc)
            .fold(Scalar::zero(), |m, v| if v > m { v } else { m });
        max + Scalar::one()
    }
}

pub(crate) fn horner_f64(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: Self) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UnivariatePolynomial::new(coeffs, self.var)
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: Self) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UnivariatePolynomial::new(coeffs, self.var)
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: Self) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero(self.var);
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UnivariatePolynomial::new(coeffs, self.var)
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = scalar::format_scalar(&c.abs());
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*{}", self.var)?,
                _ => write!(f, "{a}*{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}

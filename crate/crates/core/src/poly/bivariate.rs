//! Bivariate polynomials in the `a_{k,j} x^{k-j} y^j` indexing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{self, Scalar};
use super::univariate::{horner_f64, UnivariatePolynomial, Variable};
use crate::error::PolyError;
use crate::switching::Edge;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `H(x,0) - H(x,1)`: closes a vertical (bottom-to-top) traversal.
    Vertical,
    /// `H(0,y) - H(1,y)`: closes a horizontal (left-to-right) traversal.
    Horizontal,
}

/// Exact polynomial `Σ a_{k,j} x^{k-j} y^j`. Keys are `(k, j)` with `j <= k`;
/// zero coefficients are never stored, so the degree is always tight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(scalar::int(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(scalar::int(1), 0, 1)
    }

    /// `c · x^i y^j`.
    pub fn monomial(c: Scalar, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_monomial(i, j, c);
        p
    }

    /// Builds from `(k, j, a_{k,j})` triples; repeated keys are summed.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (u32, u32, Scalar)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero();
        for (k, j, v) in terms {
            if j > k {
                return Err(PolyError::InvalidTerm { k, j });
            }
            p.add_term(k, j, v);
        }
        Ok(p)
    }

    /// Builds from `(i, j, c)` meaning `c · x^i y^j`.
    pub fn from_monomials(monomials: impl IntoIterator<Item = (u32, u32, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in monomials {
            p.add_monomial(i, j, c);
        }
        p
    }

    pub fn from_univariate(u: &UnivariatePolynomial, var: Variable) -> Self {
        Self::from_monomials(u.coeffs().iter().enumerate().map(|(e, c)| {
            let e = e as u32;
            match var {
                Variable::Y => (0, e, c.clone()),
                _ => (e, 0, c.clone()),
            }
        }))
    }

    pub fn add_term(&mut self, k: u32, j: u32, v: Scalar) {
        debug_assert!(j <= k);
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry((k, j)).or_insert_with(Scalar::zero);
        *entry += v;
        if entry.is_zero() {
            self.terms.remove(&(k, j));
        }
    }

    pub fn add_monomial(&mut self, i: u32, j: u32, c: Scalar) {
        self.add_term(i + j, j, c);
    }

    /// Coefficient `a_{k,j}` of `x^{k-j} y^j`.
    pub fn term(&self, k: u32, j: u32) -> Scalar {
        self.terms
            .get(&(k, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.term(i + j, j)
    }

    /// `(k, j, a_{k,j})` in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> {
        self.terms.iter().map(|(&(k, j), v)| (k, j, v))
    }

    /// `(i, j, c)` for `c · x^i y^j`.
    pub fn monomials(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> {
        self.terms.iter().map(|(&(k, j), v)| (k - j, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(k, _)| k).max().unwrap_or(0)
    }

    pub fn degree_in_x(&self) -> u32 {
        self.monomials().map(|(i, _, _)| i).max().unwrap_or(0)
    }

    pub fn degree_in_y(&self) -> u32 {
        self.monomials().map(|(_, j, _)| j).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.term(0, 0)
    }

    pub fn evaluate(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.as_poly_in_x()
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, cy| acc * x + cy.eval(y))
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.to_float().eval(x, y)
    }

    /// Substitutes `x = v`, leaving a polynomial in `y`.
    pub fn at_x(&self, v: &Scalar) -> UnivariatePolynomial {
        let mut coeffs = vec![Scalar::zero(); self.degree_in_y() as usize + 1];
        for (i, j, c) in self.monomials() {
            coeffs[j as usize] += c * num_traits::pow(v.clone(), i as usize);
        }
        UnivariatePolynomial::new(coeffs, Variable::Y)
    }

    /// Substitutes `y = v`, leaving a polynomial in `x`.
    pub fn at_y(&self, v: &Scalar) -> UnivariatePolynomial {
        let mut coeffs = vec![Scalar::zero(); self.degree_in_x() as usize + 1];
        for (i, j, c) in self.monomials() {
            coeffs[i as usize] += c * num_traits::pow(v.clone(), j as usize);
        }
        UnivariatePolynomial::new(coeffs, Variable::X)
    }

    /// Restriction to one side of the unit square, parameterised by the edge coordinate.
    pub fn restrict_to_edge(&self, edge: Edge) -> UnivariatePolynomial {
        match edge {
            Edge::Bottom => self.at_y(&Scalar::zero()),
            Edge::Top => self.at_y(&Scalar::one()),
            Edge::Left => self.at_x(&Scalar::zero()),
            Edge::Right => self.at_x(&Scalar::one()),
        }
    }

    pub fn closing_difference(&self, direction: Direction) -> UnivariatePolynomial {
        let d = match direction {
            Direction::Vertical => {
                &self.restrict_to_edge(Edge::Bottom) - &self.restrict_to_edge(Edge::Top)
            }
            Direction::Horizontal => {
                &self.restrict_to_edge(Edge::Left) - &self.restrict_to_edge(Edge::Right)
            }
        };
        debug_assert!(
            self.degree() == 0 || d.degree().is_none_or(|dd| dd < self.degree() as usize),
            "top-degree terms must cancel"
        );
        d
    }

    pub fn partial_x(&self) -> Self {
        Self::from_monomials(
            self.monomials()
                .filter(|&(i, _, _)| i > 0)
                .map(|(i, j, c)| (i - 1, j, c * scalar::int(i as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_monomials(
            self.monomials()
                .filter(|&(_, j, _)| j > 0)
                .map(|(i, j, c)| (i, j - 1, c * scalar::int(j as i64))),
        )
    }

    pub fn gradient(&self) -> (Self, Self) {
        (self.partial_x(), self.partial_y())
    }

    /// `H(y, x)`.
    pub fn swap_xy(&self) -> Self {
        Self::from_monomials(self.monomials().map(|(i, j, c)| (j, i, c.clone())))
    }

    /// Coefficients of `x^0, x^1, ...` as polynomials in `y`.
    pub fn as_poly_in_x(&self) -> Vec<UnivariatePolynomial> {
        let dx = self.degree_in_x() as usize;
        let dy = self.degree_in_y() as usize;
        let mut table = vec![vec![Scalar::zero(); dy + 1]; dx + 1];
        for (i, j, c) in self.monomials() {
            table[i as usize][j as usize] = c.clone();
        }
        table
            .into_iter()
            .map(|row| UnivariatePolynomial::new(row, Variable::Y))
            .collect()
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(k, _), _)| k == d)
                .map(|(key, v)| (*key, v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_monomials(self.monomials().map(|(i, j, c)| (i, j, c * s)))
    }

    /// Dense floating-point copy for fast evaluation.
    pub fn to_float(&self) -> FloatPoly2 {
        let dx = self.degree_in_x() as usize;
        let dy = self.degree_in_y() as usize;
        let mut c = vec![vec![0.0; dy + 1]; dx + 1];
        for (i, j, v) in self.monomials() {
            c[i as usize][j as usize] = scalar::to_f64(v);
        }
        FloatPoly2::new(c)
    }

    /// Largest coefficient magnitude, used to scale residuals.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|v| scalar::to_f64(&v.abs()))
            .fold(0.0, f64::max)
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> BivariatePolynomial {
        let mut out = self.clone();
        for (k, j, v) in rhs.terms() {
            out.add_term(k, j, v.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(key, v)| (*key, -v)).collect(),
        }
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: Self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (i1, j1, c1) in self.monomials() {
            for (i2, j2, c2) in rhs.monomials() {
                out.add_monomial(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(k, j), _)| (std::cmp::Reverse(k), j));
        for (&(k, j), c) in ordered {
            let i = k - j;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || k == 0 {
                parts.push(scalar::format_scalar(&mag));
            }
            for (name, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Dense `f64` polynomial, `c[i][j]` the coefficient of `x^i y^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoly2 {
    c: Vec<Vec<f64>>,
    dx: Vec<Vec<f64>>,
    dy: Vec<Vec<f64>>,
}

impl FloatPoly2 {
    pub fn new(c: Vec<Vec<f64>>) -> Self {
        let dx = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, row)| row.iter().map(|v| v * i as f64).collect())
            .collect();
        let dy = c
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, v)| v * j as f64)
                    .collect()
            })
            .collect();
        Self { c, dx, dy }
    }

    fn eval_table(table: &[Vec<f64>], x: f64, y: f64) -> f64 {
        table
            .iter()
            .rev()
            .fold(0.0, |acc, row| acc * x + horner_f64(row, y))
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        Self::eval_table(&self.c, x, y)
    }

    pub fn grad(&self, x: f64, y: f64) -> (f64, f64) {
        (
            Self::eval_table(&self.dx, x, y),
            Self::eval_table(&self.dy, x, y),
        )
    }

    /// `Σ |c_ij| |x|^i |y|^j`: the natural scale for rounding error in `eval`.
    pub fn abs_eval(&self, x: f64, y: f64) -> f64 {
        let (ax, ay) = (x.abs(), y.abs());
        self.c.iter().rev().fold(0.0, |acc, row| {
            acc * ax + row.iter().rev().fold(0.0, |a, v| a * ay + v.abs())
        })
    }

    /// Second derivatives `(h_xx, h_xy, h_yy)` by differentiating the stored tables.
    pub fn hessian(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let dxx: Vec<Vec<f64>> = self
            .dx
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, row)| row.iter().map(|v| v * i as f64).collect())
            .collect();
        let dxy: Vec<Vec<f64>> = self
            .dx
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, v)| v * j as f64)
                    .collect()
            })
            .collect();
        let dyy: Vec<Vec<f64>> = self
            .dy
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, v)| v * j as f64)
                    .collect()
            })
            .collect();
        (
            Self::eval_table(&dxx, x, y),
            Self::eval_table(&dxy, x, y),
            Self::eval_table(&dyy, x, y),
        )
    }
}

//! Projective bookkeeping: homogenization and intersections on the line at infinity.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::bivariate::BivariatePolynomial;
use super::scalar::Scalar;
use super::univariate::{UnivariatePolynomial, Variable};
use crate::error::PolyError;

/// Homogeneous polynomial in `X, Y, Z`; keys are exponent triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    degree: u32,
    coeffs: BTreeMap<(u32, u32, u32), Scalar>,
}

impl HomogeneousPolynomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, ex: u32, ey: u32, ez: u32) -> Scalar {
        self.coeffs
            .get(&(ex, ey, ez))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = ((u32, u32, u32), &Scalar)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    /// Sets `Z = 1`.
    pub fn dehomogenize(&self) -> BivariatePolynomial {
        BivariatePolynomial::from_monomials(
            self.coeffs
                .iter()
                .map(|(&(ex, ey, _), c)| (ex, ey, c.clone())),
        )
    }

    /// The binary form `F(X, Y, 0)`, as coefficients of `X^{d-i} Y^i` for `i = 0..=d`.
    pub fn at_infinity(&self) -> BinaryForm {
        let mut coeffs = vec![Scalar::zero(); self.degree as usize + 1];
        for (&(_, ey, ez), c) in &self.coeffs {
            if ez == 0 {
                coeffs[ey as usize] = c.clone();
            }
        }
        BinaryForm { coeffs }
    }
}

/// `Z^d · p(X/Z, Y/Z)`.
pub fn homogenize(
    p: &BivariatePolynomial,
    target_degree: u32,
) -> Result<HomogeneousPolynomial, PolyError> {
    if target_degree < p.degree() {
        return Err(PolyError::DegreeTooSmall {
            degree: p.degree() as usize,
            target: target_degree as usize,
        });
    }
    let coeffs = p
        .monomials()
        .map(|(i, j, c)| ((i, j, target_degree - i - j), c.clone()))
        .collect();
    Ok(HomogeneousPolynomial {
        degree: target_degree,
        coeffs,
    })
}

/// Homogeneous form in two variables: `Σ c_i X^{d-i} Y^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Dehomogenized at `X = 1`, as a polynomial in `Y`.
    fn affine_y(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.clone(), Variable::Y)
    }

    /// Vanishes at the point `(X : Y) = (0 : 1)`.
    fn vanishes_at_y_axis(&self) -> bool {
        self.coeffs.last().is_none_or(Zero::is_zero)
    }
}

/// Whether two binary forms share a (complex) projective zero.
pub fn common_projective_zero(f: &BinaryForm, g: &BinaryForm) -> bool {
    if f.is_zero() || g.is_zero() {
        // A vanishing form contains the whole line; any zero of the other is shared.
        return true;
    }
    if f.vanishes_at_y_axis() && g.vanishes_at_y_axis() {
        return true;
    }
    f.affine_y().gcd(&g.affine_y()).degree().unwrap_or(0) > 0
}

/// Whether the projective closures of `p = 0` and `q = 0`, homogenized to the given
/// degrees, meet on the line at infinity.
pub fn common_points_at_infinity(
    p: &BivariatePolynomial,
    p_degree: u32,
    q: &BivariatePolynomial,
    q_degree: u32,
) -> Result<bool, PolyError> {
    let ph = homogenize(p, p_degree)?;
    let qh = homogenize(q, q_degree)?;
    Ok(common_projective_zero(&ph.at_infinity(), &qh.at_infinity()))
}

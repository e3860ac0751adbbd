//! Sylvester resultants over `Q[t]`, evaluated with fraction-free (Bareiss) elimination.

use super::bivariate::BivariatePolynomial;
use super::univariate::{UnivariatePolynomial, Variable};
use crate::error::PolyError;

/// Resultant of `p` and `q` with respect to `eliminate`; the result is a polynomial
/// in the remaining variable.
pub fn resultant(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    eliminate: Variable,
) -> Result<UnivariatePolynomial, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::IdenticallyZero);
    }
    let (p, q, keep) = match eliminate {
        Variable::Y => (p.swap_xy(), q.swap_xy(), Variable::X),
        _ => (p.clone(), q.clone(), Variable::Y),
    };
    let pc: Vec<_> = p
        .as_poly_in_x()
        .into_iter()
        .map(|c| c.with_var(keep))
        .collect();
    let qc: Vec<_> = q
        .as_poly_in_x()
        .into_iter()
        .map(|c| c.with_var(keep))
        .collect();
    let r = sylvester_resultant(&pc, &qc);
    if r.is_zero() {
        return Err(PolyError::CommonComponent);
    }
    Ok(r)
}

/// Resultant of two polynomials given by coefficient lists (lowest degree first)
/// whose entries live in `Q[t]`.
pub fn sylvester_resultant(
    f: &[UnivariatePolynomial],
    g: &[UnivariatePolynomial],
) -> UnivariatePolynomial {
    let var = f.first().or(g.first()).map_or(Variable::Y, |c| c.var());
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    if m == 0 && n == 0 {
        // Two constants in the eliminated variable: the resultant is 1 by convention.
        return UnivariatePolynomial::one(var);
    }
    if m == 0 {
        return pow(&f[0], n);
    }
    if n == 0 {
        return pow(&g[0], m);
    }
    let size = m + n;
    let zero = UnivariatePolynomial::zero(var);
    let mut rows = Vec::with_capacity(size);
    // Rows hold coefficients from the highest power down.
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    bareiss_determinant(rows)
}

/// Determinant of a square matrix over `Q[t]` by Bareiss elimination; every
/// intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<UnivariatePolynomial>>) -> UnivariatePolynomial {
    let n = m.len();
    let var = m
        .first()
        .and_then(|r| r.first())
        .map_or(Variable::Y, |c| c.var());
    if n == 0 {
        return UnivariatePolynomial::one(var);
    }
    let mut negate = false;
    let mut prev = UnivariatePolynomial::one(var);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UnivariatePolynomial::zero(var);
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

fn pow(p: &UnivariatePolynomial, e: usize) -> UnivariatePolynomial {
    (0..e).fold(UnivariatePolynomial::one(p.var()), |acc, _| &acc * p)
}

/// Cofactor-expansion determinant; exponential, kept as a test oracle.
pub fn laplace_determinant(m: &[Vec<UnivariatePolynomial>]) -> UnivariatePolynomial {
    let n = m.len();
    let var = m
        .first()
        .and_then(|r| r.first())
        .map_or(Variable::Y, |c| c.var());
    if n == 0 {
        return UnivariatePolynomial::one(var);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UnivariatePolynomial::zero(var);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<_>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &laplace_determinant(&minor);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::roots::unit_interval_roots;
    use crate::poly::scalar::{int, rat};

    fn bp(m: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_monomials(m.iter().map(|&(i, j, c)| (i, j, int(c))))
    }

    #[test]
    fn linear_system() {
        let p = bp(&[(1, 0, 1), (0, 1, 1), (0, 0, -1)]);
        let q = bp(&[(1, 0, 1), (0, 1, -1)]);
        let r = resultant(&p, &q, Variable::X).unwrap();
        assert_eq!(r.degree(), Some(1));
        let roots = unit_interval_roots(&r).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(rat(1, 2)));
    }

    #[test]
    fn circle_and_axis() {
        let p = bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let q = bp(&[(0, 1, 1)]);
        let r = resultant(&p, &q, Variable::Y).unwrap();
        assert_eq!(
            r.monic(),
            UnivariatePolynomial::from_i64s(&[-1, 0, 1], Variable::X)
        );
    }

    #[test]
    fn shared_factor_is_reported() {
        let f = bp(&[(1, 0, 1), (0, 1, -1)]);
        let p = &f * &bp(&[(1, 0, 1), (0, 0, 2)]);
        let q = &f * &bp(&[(0, 1, 1), (0, 0, 3)]);
        assert_eq!(
            resultant(&p, &q, Variable::X).unwrap_err(),
            PolyError::CommonComponent
        );
    }

    #[test]
    fn bareiss_matches_laplace() {
        let y = |c: &[i64]| UnivariatePolynomial::from_i64s(c, Variable::Y);
        let m = vec![
            vec![y(&[1, 2]), y(&[0]), y(&[3, 0, 1]), y(&[-1])],
            vec![y(&[0]), y(&[0]), y(&[1, 1]), y(&[2, -1])],
            vec![y(&[4]), y(&[1, 0, 0, 1]), y(&[0]), y(&[5])],
            vec![y(&[-2, 1]), y(&[1]), y(&[1]), y(&[0, 3])],
        ];
        assert_eq!(bareiss_determinant(m.clone()), laplace_determinant(&m));
    }

    #[test]
    fn degenerate_shapes() {
        let c = bp(&[(0, 1, 2), (0, 0, 1)]);
        let q = bp(&[(2, 0, 1), (0, 0, -1)]);
        // Constant in x: Res = c^deg_x(q).
        let r = resultant(&c, &q, Variable::X).unwrap();
        assert_eq!(r, UnivariatePolynomial::from_i64s(&[1, 4, 4], Variable::Y));
    }
}

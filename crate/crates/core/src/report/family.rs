//! The vertical-lines family `H = (-1)^(n+1) xⁿ + y ∏_{i=1}^{n-1} (x - i/n)`.

use crate::poly::scalar::{int, rat};
use crate::poly::BivariatePolynomial;

pub const FAMILY_NAME: &str = "vertical-lines";

pub fn family_polynomial(n: u32) -> BivariatePolynomial {
    assert!(n >= 1, "family needs n >= 1");
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let mut prod = BivariatePolynomial::y();
    for i in 1..n {
        let factor =
            &BivariatePolynomial::x() - &BivariatePolynomial::constant(rat(i as i64, n as i64));
        prod = &prod * &factor;
    }
    &BivariatePolynomial::monomial(int(sign), n, 0) + &prod
}

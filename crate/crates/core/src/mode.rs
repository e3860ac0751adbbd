use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::poly::scalar;
use crate::poly::BivariatePolynomial;

/// Tangency threshold applied to `f64` normal components.
pub const FLOAT_TANGENCY_TOL: f64 = 1e-10;

/// Arithmetic regime.
///
/// `Exact` keeps input coefficients as exact rationals and decides signs exactly
/// wherever the point in question is rational. `Float` rounds every coefficient to
/// the nearest `f64` first and thresholds normal components at [`FLOAT_TANGENCY_TOL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl Mode {
    pub fn tangency_tolerance(self) -> f64 {
        match self {
            Mode::Exact => 0.0,
            Mode::Float => FLOAT_TANGENCY_TOL,
        }
    }

    /// Threshold for quantities that are only available in floating point, such as
    /// normal components at irrational seam points.
    pub fn float_tangency_tolerance(self) -> f64 {
        FLOAT_TANGENCY_TOL
    }

    /// The polynomial actually analysed in this mode.
    pub fn prepare(self, h: &BivariatePolynomial) -> BivariatePolynomial {
        match self {
            Mode::Exact => h.clone(),
            Mode::Float => BivariatePolynomial::from_monomials(
                h.monomials()
                    .map(|(i, j, c)| (i, j, scalar::from_f64(scalar::to_f64(c)))),
            ),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?} (expected exact or float)")),
        }
    }
}

//! Exact polynomial arithmetic over the rationals.

pub mod bivariate;
pub mod homogeneous;
mod integer;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod univariate;

pub use bivariate::{BivariatePolynomial, Direction, FloatPoly2};
pub use homogeneous::{common_points_at_infinity, homogenize, BinaryForm, HomogeneousPolynomial};
pub use resultant::resultant;
pub use roots::{
    real_roots, real_roots_in_closed_interval, real_roots_in_open_interval, IsolatedRoot,
    RootOptions,
};
pub use scalar::Scalar;
pub use univariate::{UnivariatePolynomial, Variable};

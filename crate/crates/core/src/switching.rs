//! The torus as the unit square with opposite sides glued, and Filippov
//! classification of points on the switching boundary.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::mode::Mode;
use crate::poly::scalar::{self, Scalar};
use crate::poly::BivariatePolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    /// `y = 0`
    Bottom,
    /// `y = 1`
    Top,
    /// `x = 0`
    Left,
    /// `x = 1`
    Right,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::Bottom, Edge::Top, Edge::Left, Edge::Right];

    pub fn opposite(self) -> Edge {
        match self {
            Edge::Bottom => Edge::Top,
            Edge::Top => Edge::Bottom,
            Edge::Left => Edge::Right,
            Edge::Right => Edge::Left,
        }
    }

    /// Unit normal pointing into the square.
    pub fn inward_normal(self) -> (f64, f64) {
        match self {
            Edge::Bottom => (0.0, 1.0),
            Edge::Top => (0.0, -1.0),
            Edge::Left => (1.0, 0.0),
            Edge::Right => (-1.0, 0.0),
        }
    }

    /// `'b'` for the horizontal sides (crossed by vertical loops), `'a'` for the vertical sides.
    pub fn letter(self) -> char {
        match self {
            Edge::Bottom | Edge::Top => 'b',
            Edge::Left | Edge::Right => 'a',
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Edge::Bottom | Edge::Top)
    }

    /// Cartesian position of the edge point with coordinate `t`.
    pub fn position(self, t: f64) -> (f64, f64) {
        match self {
            Edge::Bottom => (t, 0.0),
            Edge::Top => (t, 1.0),
            Edge::Left => (0.0, t),
            Edge::Right => (1.0, t),
        }
    }

    pub fn exact_position(self, t: &Scalar) -> (Scalar, Scalar) {
        match self {
            Edge::Bottom => (t.clone(), Scalar::zero()),
            Edge::Top => (t.clone(), Scalar::one()),
            Edge::Left => (Scalar::zero(), t.clone()),
            Edge::Right => (Scalar::one(), t.clone()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::Bottom => "bottom",
            Edge::Top => "top",
            Edge::Left => "left",
            Edge::Right => "right",
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Edge {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bottom" => Ok(Edge::Bottom),
            "top" => Ok(Edge::Top),
            "left" => Ok(Edge::Left),
            "right" => Ok(Edge::Right),
            other => Err(format!(
                "unknown edge {other:?} (expected bottom, top, left or right)"
            )),
        }
    }
}

/// A point of the boundary, with an optional exact coordinate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgePoint {
    pub edge: Edge,
    pub t: f64,
    #[serde(
        serialize_with = "scalar::serialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub exact: Option<Scalar>,
}

impl EdgePoint {
    pub fn new(edge: Edge, t: f64) -> Result<Self, GeometryError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(GeometryError::OutOfRange(t));
        }
        Ok(Self {
            edge,
            t,
            exact: None,
        })
    }

    pub fn exact(edge: Edge, t: Scalar) -> Result<Self, GeometryError> {
        let tf = scalar::to_f64(&t);
        if t < Scalar::zero() || t > Scalar::one() {
            return Err(GeometryError::OutOfRange(tf));
        }
        Ok(Self {
            edge,
            t: tf,
            exact: Some(t),
        })
    }

    /// The identified point on the opposite side (same coordinate).
    pub fn partner(&self) -> Self {
        Self {
            edge: self.edge.opposite(),
            t: self.t,
            exact: self.exact.clone(),
        }
    }

    pub fn position(&self) -> (f64, f64) {
        self.edge.position(self.t)
    }

    pub fn is_corner(&self) -> bool {
        match &self.exact {
            Some(t) => t.is_zero() || t.is_one(),
            None => self.t == 0.0 || self.t == 1.0,
        }
    }

    fn require_non_corner(&self) -> Result<(), GeometryError> {
        if self.is_corner() {
            Err(GeometryError::CornerPoint {
                edge: self.edge,
                t: self.t,
            })
        } else {
            Ok(())
        }
    }
}

/// Canonical representative in `[0,1)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
}

impl TorusPoint {
    pub fn canonicalize(x: f64, y: f64) -> Self {
        Self {
            x: wrap(x),
            y: wrap(y),
        }
    }

    /// Flat-torus distance.
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        let dx = circle_gap(self.x, other.x);
        let dy = circle_gap(self.y, other.y);
        dx.hypot(dy)
    }
}

fn wrap(v: f64) -> f64 {
    let w = v.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs.
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

fn circle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilippovClass {
    Sewing,
    Sliding,
    Escape,
    Tangency,
}

impl fmt::Display for FilippovClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilippovClass::Sewing => "sewing",
            FilippovClass::Sliding => "sliding",
            FilippovClass::Escape => "escape",
            FilippovClass::Tangency => "tangency",
        })
    }
}

/// Normal component of `X_H = (-H_y, H_x)` at `(x, y)` against the inward normal of `edge`.
pub fn normal_component_f64(h: &crate::poly::FloatPoly2, edge: Edge, x: f64, y: f64) -> f64 {
    let (hx, hy) = h.grad(x, y);
    let (nx, ny) = edge.inward_normal();
    -hy * nx + hx * ny
}

fn normal_component_exact(h: &BivariatePolynomial, edge: Edge, x: &Scalar, y: &Scalar) -> Scalar {
    match edge {
        Edge::Bottom => h.partial_x().evaluate(x, y),
        Edge::Top => -h.partial_x().evaluate(x, y),
        Edge::Left => -h.partial_y().evaluate(x, y),
        Edge::Right => h.partial_y().evaluate(x, y),
    }
}

/// `(ν⁺, ν⁻)`: the field at `e` and at its partner, both dotted with the inward normal at `e`.
pub fn normal_components(h: &BivariatePolynomial, e: &EdgePoint) -> (f64, f64) {
    let f = h.to_float();
    let (x, y) = e.position();
    let (px, py) = e.partner().position();
    (
        normal_component_f64(&f, e.edge, x, y),
        normal_component_f64(&f, e.edge, px, py),
    )
}

/// Exact `(ν⁺, ν⁻)` when the edge coordinate is rational.
pub fn normal_components_exact(h: &BivariatePolynomial, e: &EdgePoint) -> Option<(Scalar, Scalar)> {
    let t = e.exact.as_ref()?;
    let (x, y) = e.edge.exact_position(t);
    let (px, py) = e.edge.opposite().exact_position(t);
    Some((
        normal_component_exact(h, e.edge, &x, &y),
        normal_component_exact(h, e.edge, &px, &py),
    ))
}

/// `t ↦ X_H(edge(t)) · n_edge` as an exact polynomial in the edge coordinate.
/// At `e = edge(t)`, `ν⁺ = N_edge(t)` and `ν⁻ = -N_opposite(t)`.
pub fn normal_polynomial(h: &BivariatePolynomial, edge: Edge) -> crate::poly::UnivariatePolynomial {
    match edge {
        Edge::Bottom => h.partial_x().restrict_to_edge(edge),
        Edge::Top => -&h.partial_x().restrict_to_edge(edge),
        Edge::Left => -&h.partial_y().restrict_to_edge(edge),
        Edge::Right => h.partial_y().restrict_to_edge(edge),
    }
}

/// Sign table: both components of one sign cross; inward-pointing on both sides
/// slides, outward-pointing on both sides escapes.
pub fn class_from_signs(plus: i8, minus: i8) -> FilippovClass {
    if plus == 0 || minus == 0 {
        FilippovClass::Tangency
    } else if plus == minus {
        FilippovClass::Sewing
    } else if plus < 0 {
        FilippovClass::Sliding
    } else {
        FilippovClass::Escape
    }
}

fn sign_with_tol(v: f64, tol: f64) -> i8 {
    if v.abs() <= tol || v.is_nan() {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Signs of `(ν⁺, ν⁻)`: exact when the mode and the point allow it, otherwise
/// thresholded by the mode's tangency tolerance.
fn normal_signs(h: &BivariatePolynomial, e: &EdgePoint, mode: Mode) -> (i8, i8) {
    if mode == Mode::Exact {
        if let Some((p, m)) = normal_components_exact(h, e) {
            return (scalar::sign(&p), scalar::sign(&m));
        }
    }
    let tol = mode.float_tangency_tolerance();
    let (p, m) = normal_components(h, e);
    (sign_with_tol(p, tol), sign_with_tol(m, tol))
}

pub fn classify_edge_point(
    h: &BivariatePolynomial,
    e: &EdgePoint,
    mode: Mode,
) -> Result<FilippovClass, GeometryError> {
    e.require_non_corner()?;
    let (p, m) = normal_signs(h, e, mode);
    Ok(class_from_signs(p, m))
}

/// True per point iff the field is transverse to the boundary at the point and at its partner.
pub fn transversality_check(
    h: &BivariatePolynomial,
    points: &[EdgePoint],
    mode: Mode,
) -> Result<Vec<bool>, GeometryError> {
    points
        .iter()
        .map(|e| {
            e.require_non_corner()?;
            let (p, m) = normal_signs(h, e, mode);
            Ok(p != 0 && m != 0)
        })
        .collect()
}

/// Float classification with an explicit tolerance, used by the tracer.
pub fn classify_f64(
    h: &crate::poly::FloatPoly2,
    edge: Edge,
    t: f64,
    tol: f64,
) -> (FilippovClass, f64, f64) {
    let (x, y) = edge.position(t);
    let (px, py) = edge.opposite().position(t);
    let plus = normal_component_f64(h, edge, x, y);
    let minus = normal_component_f64(h, edge, px, py);
    (
        class_from_signs(sign_with_tol(plus, tol), sign_with_tol(minus, tol)),
        plus,
        minus,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::{int, rat};

    fn quadratic(a: i64, b: i64, c: i64) -> BivariatePolynomial {
        BivariatePolynomial::from_terms([(2, 0, int(a)), (2, 1, int(b)), (2, 2, int(c))]).unwrap()
    }

    #[test]
    fn partner_is_an_involution() {
        let e = EdgePoint::new(Edge::Left, 0.3).unwrap();
        assert_eq!(e.partner().edge, Edge::Right);
        assert_eq!(e.partner().partner(), e);
        assert!(EdgePoint::new(Edge::Top, 1.0).unwrap().is_corner());
        assert!(EdgePoint::new(Edge::Top, 1.5).is_err());
    }

    #[test]
    fn canonical_torus_points() {
        let p = TorusPoint::canonicalize(1.25, -0.25);
        assert_eq!(p, TorusPoint { x: 0.25, y: 0.75 });
        assert_eq!(TorusPoint::canonicalize(0.25, 0.75), p);
        let a = TorusPoint::canonicalize(0.01, 0.5);
        let b = TorusPoint::canonicalize(0.99, 0.5);
        assert!((a.distance(&b) - 0.02).abs() < 1e-12);
    }

    #[test]
    fn quadratic_seam_is_sewing() {
        // x0 = -c/b = 1/2; H_x = 2ax + by is 1 at (1/2,0) and 3 at (1/2,1).
        let h = quadratic(1, 2, -1);
        let e = EdgePoint::exact(Edge::Bottom, rat(1, 2)).unwrap();
        assert_eq!(
            classify_edge_point(&h, &e, Mode::Exact).unwrap(),
            FilippovClass::Sewing
        );
        assert_eq!(normal_components(&h, &e), (1.0, 3.0));
    }

    #[test]
    fn tangency_and_corners() {
        let h = BivariatePolynomial::monomial(int(1), 0, 2);
        let e = EdgePoint::exact(Edge::Bottom, rat(1, 3)).unwrap();
        assert_eq!(
            classify_edge_point(&h, &e, Mode::Exact).unwrap(),
            FilippovClass::Tangency
        );
        assert_eq!(
            transversality_check(&h, &[e], Mode::Float).unwrap(),
            vec![false]
        );
        let corner = EdgePoint::new(Edge::Left, 0.0).unwrap();
        assert!(matches!(
            classify_edge_point(&h, &corner, Mode::Float),
            Err(GeometryError::CornerPoint { .. })
        ));
    }

    #[test]
    fn sliding_and_escape() {
        // H = y (x - 1/2): at the left edge ν⁺ = -H_y(0,t) = 1/2, ν⁻ = -H_y(1,t) = -1/2.
        let h = BivariatePolynomial::from_monomials([(1, 1, int(1)), (0, 1, rat(-1, 2))]);
        let e = EdgePoint::exact(Edge::Left, rat(1, 3)).unwrap();
        assert_eq!(
            classify_edge_point(&h, &e, Mode::Exact).unwrap(),
            FilippovClass::Escape
        );
        let flipped = &BivariatePolynomial::zero() - &h;
        assert_eq!(
            classify_edge_point(&flipped, &e, Mode::Exact).unwrap(),
            FilippovClass::Sliding
        );
        // The class is a property of the glued point, not of the representative.
        assert_eq!(
            classify_edge_point(&h, &e.partner(), Mode::Exact).unwrap(),
            FilippovClass::Escape
        );
    }
}

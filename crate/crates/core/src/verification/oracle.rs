//! Grid-based closing-equation scan, independent of the exact enumerators.

use serde::Serialize;

use crate::enumeration::CycleType;
use crate::poly::{BivariatePolynomial, FloatPoly2};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCandidate {
    pub cycle_type: CycleType,
    /// `[x₀]`, `[y₀]`, or `[x, y]`.
    pub seam: Vec<f64>,
}

/// Scans the closing equations on a `grid × grid` lattice of `(0,1)²` and
/// refines sign changes by bisection (one unknown) or Newton (two unknowns).
pub fn brute_force_cycle_scan(h: &BivariatePolynomial, grid: usize) -> Vec<OracleCandidate> {
    assert!(grid >= 64, "grid must be at least 64");
    let f = h.to_float();
    let mut out = Vec::new();
    for x in scan_1d(|x| f.eval(x, 0.0) - f.eval(x, 1.0), grid * grid) {
        out.push(OracleCandidate {
            cycle_type: CycleType::Bb,
            seam: vec![x],
        });
    }
    for y in scan_1d(|y| f.eval(0.0, y) - f.eval(1.0, y), grid * grid) {
        out.push(OracleCandidate {
            cycle_type: CycleType::Aa,
            seam: vec![y],
        });
    }
    for (x, y) in scan_2d(&f, grid, false) {
        out.push(OracleCandidate {
            cycle_type: CycleType::Aba,
            seam: vec![x, y],
        });
    }
    for (x, y) in scan_2d(&f, grid, true) {
        out.push(OracleCandidate {
            cycle_type: CycleType::Bab,
            seam: vec![x, y],
        });
    }
    out
}

fn scan_1d(g: impl Fn(f64) -> f64, samples: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = 1.0 / samples as f64;
    let mut prev_t = step;
    let mut prev = g(prev_t);
    if prev == 0.0 {
        roots.push(prev_t);
    }
    for i in 2..samples {
        let t = i as f64 * step;
        let v = g(t);
        if v == 0.0 {
            roots.push(t);
        } else if prev != 0.0 && v.signum() != prev.signum() {
            roots.push(bisect(&g, prev_t, t));
        }
        prev = v;
        prev_t = t;
    }
    // Sign changes in the end cells (0, step) and (1 - step, 1).
    for (a, b) in [(0.0, step), (1.0 - step, 1.0)] {
        let (ga, gb) = (g(a), g(b));
        if ga != 0.0 && gb != 0.0 && ga.signum() != gb.signum() {
            let r = bisect(&g, a, b);
            if r > 0.0 && r < 1.0 {
                roots.push(r);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ga = g(a);
    for _ in 0..200 {
        if b - a <= 1e-15 {
            break;
        }
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if gm.signum() == ga.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Two-loop closing system `H(0,y) = H(x,1)`, `H(x,0) = H(1,y)`. With `swapped`,
/// the system of `H(y,x)` is solved and the solution mapped back.
fn scan_2d(f: &FloatPoly2, grid: usize, swapped: bool) -> Vec<(f64, f64)> {
    let hv = |x: f64, y: f64| if swapped { f.eval(y, x) } else { f.eval(x, y) };
    let hg = |x: f64, y: f64| {
        if swapped {
            let (gx, gy) = f.grad(y, x);
            (gy, gx)
        } else {
            f.grad(x, y)
        }
    };
    let p = |x: f64, y: f64| hv(0.0, y) - hv(x, 1.0);
    let q = |x: f64, y: f64| hv(x, 0.0) - hv(1.0, y);
    let jac = |x: f64, y: f64| {
        // ∂P/∂x = -H_x(x,1), ∂P/∂y = H_y(0,y), ∂Q/∂x = H_x(x,0), ∂Q/∂y = -H_y(1,y)
        let (hx1, _) = hg(x, 1.0);
        let (_, hy0) = hg(0.0, y);
        let (hx0, _) = hg(x, 0.0);
        let (_, hy1) = hg(1.0, y);
        (-hx1, hy0, hx0, -hy1)
    };

    let step = 1.0 / grid as f64;
    let pv: Vec<Vec<f64>> = (0..=grid)
        .map(|i| {
            (0..=grid)
                .map(|j| p(i as f64 * step, j as f64 * step))
                .collect()
        })
        .collect();
    let qv: Vec<Vec<f64>> = (0..=grid)
        .map(|i| {
            (0..=grid)
                .map(|j| q(i as f64 * step, j as f64 * step))
                .collect()
        })
        .collect();
    let changes = |v: &Vec<Vec<f64>>, i: usize, j: usize| {
        let c = [v[i][j], v[i + 1][j], v[i][j + 1], v[i + 1][j + 1]];
        let pos = c.iter().any(|&s| s >= 0.0);
        let neg = c.iter().any(|&s| s <= 0.0);
        pos && neg
    };

    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            if !(changes(&pv, i, j) && changes(&qv, i, j)) {
                continue;
            }
            let (mut x, mut y) = ((i as f64 + 0.5) * step, (j as f64 + 0.5) * step);
            let mut ok = false;
            for _ in 0..60 {
                let (pp, qq) = (p(x, y), q(x, y));
                let (a, b, c, d) = jac(x, y);
                let det = a * d - b * c;
                if det == 0.0 || !det.is_finite() {
                    break;
                }
                let dx = (d * pp - b * qq) / det;
                let dy = (a * qq - c * pp) / det;
                x -= dx;
                y -= dy;
                if dx.hypot(dy) < 1e-15 {
                    ok = true;
                    break;
                }
            }
            let scale = 1.0 + f.abs_eval(1.0, 1.0);
            let residual = p(x, y).abs().max(q(x, y).abs());
            ok = ok || residual <= 1e-13 * scale;
            let near = (x - (i as f64 + 0.5) * step).abs() <= 2.0 * step
                && (y - (j as f64 + 0.5) * step).abs() <= 2.0 * step;
            if ok && near && x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0 && residual <= 1e-10 * scale {
                let (sx, sy) = if swapped { (y, x) } else { (x, y) };
                if !found
                    .iter()
                    .any(|&(a, b)| (a - sx).abs() < 1e-9 && (b - sy).abs() < 1e-9)
                {
                    found.push((sx, sy));
                }
            }
        }
    }
    found.sort_by(|a, b| a.partial_cmp(b).unwrap());
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::int;

    #[test]
    fn circle_has_nothing() {
        let h = BivariatePolynomial::from_terms([(2, 0, int(1)), (2, 2, int(1))]).unwrap();
        assert!(brute_force_cycle_scan(&h, 64).is_empty());
    }

    #[test]
    fn quadratic_seam() {
        let h = BivariatePolynomial::from_terms([(2, 0, int(1)), (2, 1, int(2)), (2, 2, int(-1))])
            .unwrap();
        let found = brute_force_cycle_scan(&h, 64);
        let bb: Vec<_> = found
            .iter()
            .filter(|c| c.cycle_type == CycleType::Bb)
            .collect();
        assert_eq!(bb.len(), 1);
        assert!((bb[0].seam[0] - 0.5).abs() < 1e-12);
    }
}

//! Predictor–corrector continuation of a level curve of `H` through the glued square.

use serde::Serialize;

use crate::enumeration::canonical_word;
use crate::error::{GeometryError, TraceError};
use crate::poly::FloatPoly2;
use crate::switching::{classify_f64, Edge, EdgePoint, FilippovClass, TorusPoint};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceOptions {
    pub max_crossings: usize,
    /// Torus distance under which the curve counts as closed.
    pub closure_tol: f64,
    /// Largest accepted `|H - level|` along the curve.
    pub level_drift_tol: f64,
    /// `‖∇H‖` below this stops the trace.
    pub grad_floor: f64,
    /// Absolute tolerance on the normal components when classifying crossings.
    pub tangency_tol: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Trace along `-X_H` instead of `X_H`.
    pub reverse: bool,
    /// Levels the curve should carry. After each crossing the level is
    /// re-anchored to the nearest one if it lies within `anchor_tol`.
    pub anchor_levels: Vec<f64>,
    pub anchor_tol: f64,
    /// Hard cap on continuation steps per segment.
    pub max_steps: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            max_crossings: 8,
            closure_tol: 1e-6,
            level_drift_tol: 1e-8,
            grad_floor: 1e-8,
            tangency_tol: 1e-10,
            initial_step: 1e-3,
            min_step: 1e-6,
            max_step: 1e-2,
            reverse: false,
            anchor_levels: Vec::new(),
            anchor_tol: 1e-7,
            max_steps: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    /// The point where the curve leaves the square.
    pub point: EdgePoint,
    pub class: FilippovClass,
    /// `(ν⁺, ν⁻)` at the point.
    pub normals: (f64, f64),
    pub level_before: f64,
    pub level_after: f64,
    /// `|H(partner) - level_after|`: nonzero only when the level was re-anchored.
    pub jump: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStop {
    Closed,
    NonSewing,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracedCurve {
    /// One polyline per copy of the square, in traversal order.
    pub segments: Vec<Vec<TorusPoint>>,
    /// Level carried by each segment.
    pub segment_levels: Vec<f64>,
    pub crossings: Vec<Crossing>,
    pub level: f64,
    pub closed: bool,
    /// Letters of the crossings in traversal order.
    pub raw_word: String,
    /// `raw_word` up to rotation and reversal.
    pub word: String,
    pub closure_error: f64,
    pub max_level_drift: f64,
    pub min_grad: f64,
    pub stop: TraceStop,
}

impl TracedCurve {
    pub fn points(&self) -> impl Iterator<Item = &TorusPoint> {
        self.segments.iter().flatten()
    }

    pub fn max_jump(&self) -> f64 {
        self.crossings.iter().map(|c| c.jump).fold(0.0, f64::max)
    }
}

/// Traces `{H = H(start)}` from `start` along `X_H`, continuing through partner
/// points, until the curve closes, meets a non-sewing point, or fails.
pub fn trace_level_curve(
    h: &FloatPoly2,
    start: &EdgePoint,
    opts: &TraceOptions,
) -> Result<TracedCurve, TraceError> {
    let (curve, err) = trace_with_outcome(h, start, opts);
    match err {
        Some(e) => Err(e),
        None => Ok(curve),
    }
}

/// Like [`trace_level_curve`], but keeps the partial curve when tracing fails.
pub fn trace_with_outcome(
    h: &FloatPoly2,
    start: &EdgePoint,
    opts: &TraceOptions,
) -> (TracedCurve, Option<TraceError>) {
    let mut tracer = Tracer {
        h,
        opts,
        sigma: if opts.reverse { -1.0 } else { 1.0 },
        curve: TracedCurve {
            segments: Vec::new(),
            segment_levels: Vec::new(),
            crossings: Vec::new(),
            level: f64::NAN,
            closed: false,
            raw_word: String::new(),
            word: String::new(),
            closure_error: f64::INFINITY,
            max_level_drift: 0.0,
            min_grad: f64::INFINITY,
            stop: TraceStop::Error,
        },
    };
    let err = tracer.run(start).err();
    let mut curve = tracer.curve;
    curve.word = canonical_word(&curve.raw_word);
    (curve, err)
}

struct Tracer<'a> {
    h: &'a FloatPoly2,
    opts: &'a TraceOptions,
    sigma: f64,
    curve: TracedCurve,
}

enum SegmentEnd {
    Exit { edge: Edge, t: f64 },
}

impl Tracer<'_> {
    fn run(&mut self, start: &EdgePoint) -> Result<(), TraceError> {
        if start.is_corner() {
            return Err(GeometryError::CornerPoint {
                edge: start.edge,
                t: start.t,
            }
            .into());
        }
        let (sx, sy) = start.position();
        let g = norm(self.h.grad(sx, sy));
        if g < self.opts.grad_floor {
            return Err(TraceError::StartOnCriticalPoint(g));
        }
        let start_level = self.anchor(self.h.eval(sx, sy));

        let (class, plus, minus) =
            classify_f64(self.h, start.edge, start.t, self.opts.tangency_tol);
        match class {
            FilippovClass::Sewing => {}
            FilippovClass::Tangency => {
                return Err(TraceError::TangencyEncountered {
                    edge: start.edge,
                    t: start.t,
                })
            }
            _ => {
                self.curve.crossings.push(Crossing {
                    point: start.clone(),
                    class,
                    normals: (plus, minus),
                    level_before: start_level,
                    level_after: start_level,
                    jump: 0.0,
                });
                self.curve.raw_word.push(start.edge.letter());
                self.curve.stop = TraceStop::NonSewing;
                return Ok(());
            }
        }
        // Enter through whichever copy of the seam the traced direction points into.
        let entry = if self.sigma * plus > 0.0 {
            start.clone()
        } else {
            start.partner()
        };
        let entry_torus = torus(entry.position());
        let (ex, ey) = entry.position();
        let mut level = self.anchor(self.h.eval(ex, ey));
        self.curve.level = level;
        let mut current = self.project_on_edge(&entry, level);
        loop {
            let SegmentEnd::Exit { edge, t } = self.segment(&current, level)?;
            let exit = EdgePoint {
                edge,
                t,
                exact: None,
            };
            if exit.is_corner() || !(1e-9..=1.0 - 1e-9).contains(&t) {
                return Err(GeometryError::CornerPoint { edge, t }.into());
            }
            let (class, plus, minus) = classify_f64(self.h, edge, t, self.opts.tangency_tol);
            if class == FilippovClass::Tangency {
                return Err(TraceError::TangencyEncountered { edge, t });
            }
            let partner = exit.partner();
            let (px, py) = partner.position();
            let raw_next = self.h.eval(px, py);
            let next_level = self.anchor(raw_next);
            let jump = (raw_next - next_level).abs();
            self.curve.crossings.push(Crossing {
                point: exit.clone(),
                class,
                normals: (plus, minus),
                level_before: level,
                level_after: next_level,
                jump,
            });
            self.curve.raw_word.push(edge.letter());
            if class != FilippovClass::Sewing {
                self.curve.stop = TraceStop::NonSewing;
                return Ok(());
            }
            let gap = torus(exit.position()).distance(&entry_torus);
            if gap <= self.opts.closure_tol {
                self.curve.closure_error = gap;
                self.curve.closed = true;
                self.curve.stop = TraceStop::Closed;
                return Ok(());
            }
            if self.curve.crossings.len() >= self.opts.max_crossings {
                return Err(TraceError::MaxCrossingsExceeded(self.curve.crossings.len()));
            }
            current = self.project_on_edge(&partner, next_level);
            level = next_level;
        }
    }

    fn anchor(&self, value: f64) -> f64 {
        self.opts
            .anchor_levels
            .iter()
            .copied()
            .filter(|l| (l - value).abs() <= self.opts.anchor_tol)
            .min_by(|a, b| (a - value).abs().total_cmp(&(b - value).abs()))
            .unwrap_or(value)
    }

    /// Moves an edge point along its edge onto `{H = level}`.
    fn project_on_edge(&self, p: &EdgePoint, level: f64) -> EdgePoint {
        let t = edge_root_near(self.h, p.edge, level, p.t).unwrap_or(p.t);
        EdgePoint {
            edge: p.edge,
            t,
            exact: None,
        }
    }

    fn velocity(&self, x: f64, y: f64) -> ((f64, f64), f64) {
        let (gx, gy) = self.h.grad(x, y);
        let g = gx.hypot(gy);
        ((self.sigma * -gy / g, self.sigma * gx / g), g)
    }

    /// Newton projection onto `{H = level}` along the gradient.
    fn correct(&self, mut x: f64, mut y: f64, level: f64) -> Option<(f64, f64, usize)> {
        for it in 0..12 {
            let r = self.h.eval(x, y) - level;
            let scale = 1e-14 * self.h.abs_eval(x, y).max(1.0);
            if r.abs() <= scale {
                return Some((x, y, it));
            }
            let (gx, gy) = self.h.grad(x, y);
            let g2 = gx * gx + gy * gy;
            if g2 == 0.0 || !g2.is_finite() {
                return None;
            }
            x -= r * gx / g2;
            y -= r * gy / g2;
        }
        let r = self.h.eval(x, y) - level;
        (r.abs() <= 0.1 * self.opts.level_drift_tol).then_some((x, y, 12))
    }

    fn record_point(&mut self, x: f64, y: f64, level: f64, g: f64) {
        let drift = (self.h.eval(x, y) - level).abs();
        self.curve.max_level_drift = self.curve.max_level_drift.max(drift);
        self.curve.min_grad = self.curve.min_grad.min(g);
        self.curve
            .segments
            .last_mut()
            .unwrap()
            .push(TorusPoint { x, y });
    }

    /// Follows the level curve from an entry point to the next exit.
    fn segment(&mut self, entry: &EdgePoint, level: f64) -> Result<SegmentEnd, TraceError> {
        self.curve.segments.push(Vec::new());
        self.curve.segment_levels.push(level);
        let (mut x, mut y) = entry.position();
        let (_, g0) = self.velocity(x, y);
        if g0 < self.opts.grad_floor {
            return Err(TraceError::GradientFloorHit { x, y, grad: g0 });
        }
        self.record_point(x, y, level, g0);

        let mut h_step = self.opts.initial_step;
        let mut grads: [f64; 2] = [f64::INFINITY, g0];
        let mut g_max = g0;
        for _ in 0..self.opts.max_steps {
            let ((tx, ty), g) = self.velocity(x, y);
            if g < self.opts.grad_floor {
                return Err(TraceError::GradientFloorHit { x, y, grad: g });
            }
            let step = loop {
                match self.try_step(x, y, tx, ty, h_step, level) {
                    Some(s) => break Some(s),
                    None if h_step > self.opts.min_step => {
                        h_step = (h_step * 0.5).max(self.opts.min_step)
                    }
                    None => break None,
                }
            };
            let Some((nx, ny, iters)) = step else {
                return Err(self.stall(x, y, level));
            };

            if !inside(nx, ny) {
                return self.locate_exit(x, y, tx, ty, h_step, level);
            }

            let (_, ng) = self.velocity(nx, ny);
            g_max = g_max.max(ng);
            // A dip in ‖∇H‖ may hide a critical point between samples.
            if grads[1] < grads[0] && grads[1] <= ng && grads[1] < 1e-2 * g_max {
                if let Some(err) = self.probe_critical(x, y, level, h_step) {
                    return Err(err);
                }
            }
            grads = [grads[1], ng];
            x = nx;
            y = ny;
            self.record_point(x, y, level, ng);
            if iters <= 2 {
                h_step = (h_step * 1.5).min(self.opts.max_step);
            } else if iters >= 5 {
                h_step = (h_step * 0.5).max(self.opts.min_step);
            }
        }
        Err(self.stall(x, y, level))
    }

    /// One predictor–corrector step with turning-angle control.
    fn try_step(
        &self,
        x: f64,
        y: f64,
        tx: f64,
        ty: f64,
        h_step: f64,
        level: f64,
    ) -> Option<(f64, f64, usize)> {
        let (nx, ny, iters) = self.correct(x + h_step * tx, y + h_step * ty, level)?;
        let ((ux, uy), g) = self.velocity(nx, ny);
        if !g.is_finite() || g == 0.0 {
            return None;
        }
        let cos = (tx * ux + ty * uy).clamp(-1.0, 1.0);
        let angle = cos.acos();
        let max_angle = 0.1f64.min(2e-6 / h_step);
        if angle > max_angle && h_step > self.opts.min_step {
            return None;
        }
        let moved = (nx - x).hypot(ny - y);
        if moved > 2.0 * h_step {
            return None;
        }
        Some((nx, ny, iters))
    }

    /// Bisects the step length so the corrected point lands on the boundary,
    /// then solves the edge restriction for the exact crossing.
    fn locate_exit(
        &mut self,
        x: f64,
        y: f64,
        tx: f64,
        ty: f64,
        h_step: f64,
        level: f64,
    ) -> Result<SegmentEnd, TraceError> {
        let mut lo = 0.0;
        let mut hi = h_step;
        let mut outside_point = None;
        for _ in 0..80 {
            if hi - lo <= 1e-13 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match self.correct(x + mid * tx, y + mid * ty, level) {
                Some((mx, my, _)) if inside(mx, my) => lo = mid,
                Some((mx, my, _)) => {
                    hi = mid;
                    outside_point = Some((mx, my));
                }
                None => hi = mid,
            }
        }
        let (ox, oy) = match outside_point {
            Some(p) => p,
            None => {
                let (px, py, _) = self
                    .correct(x + hi * tx, y + hi * ty, level)
                    .ok_or_else(|| self.stall(x, y, level))?;
                (px, py)
            }
        };
        let (ix, iy, _) = self
            .correct(x + lo * tx, y + lo * ty, level)
            .unwrap_or((x, y, 0));
        let edge = exit_edge(ox, oy);
        let guess = if edge.is_horizontal() {
            0.5 * (ix + ox)
        } else {
            0.5 * (iy + oy)
        };
        let t = edge_root_near(self.h, edge, level, guess.clamp(0.0, 1.0)).ok_or(
            TraceError::TangencyEncountered {
                edge,
                t: guess.clamp(0.0, 1.0),
            },
        )?;
        let (ex, ey) = edge.position(t);
        let (_, g) = self.velocity(ex, ey);
        self.record_point(ix, iy, level, g);
        self.record_point(ex, ey, level, g);
        Ok(SegmentEnd::Exit { edge, t })
    }

    fn stall(&self, x: f64, y: f64, level: f64) -> TraceError {
        self.probe_critical(x, y, level, self.opts.max_step)
            .unwrap_or(TraceError::StepLimit { x, y })
    }

    /// Newton on `∇H = 0` near `(x, y)`; reports a critical point on the level set.
    fn probe_critical(&self, x: f64, y: f64, level: f64, radius: f64) -> Option<TraceError> {
        let (mut cx, mut cy) = (x, y);
        for _ in 0..50 {
            let (gx, gy) = self.h.grad(cx, cy);
            let (hxx, hxy, hyy) = self.h.hessian(cx, cy);
            let det = hxx * hyy - hxy * hxy;
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dx = (hyy * gx - hxy * gy) / det;
            let dy = (hxx * gy - hxy * gx) / det;
            cx -= dx;
            cy -= dy;
            if dx.hypot(dy) < 1e-15 {
                break;
            }
        }
        let g = norm(self.h.grad(cx, cy));
        let near = (cx - x).hypot(cy - y) <= 10.0 * radius.max(self.opts.min_step);
        let on_level = (self.h.eval(cx, cy) - level).abs() <= self.opts.level_drift_tol;
        let in_square =
            (-1e-12..=1.0 + 1e-12).contains(&cx) && (-1e-12..=1.0 + 1e-12).contains(&cy);
        (near && on_level && in_square && g < self.opts.grad_floor.max(1e-10)).then_some(
            TraceError::GradientFloorHit {
                x: cx,
                y: cy,
                grad: g,
            },
        )
    }
}

/// Root of `H(edge(t)) = level` near `guess`, bracketed and bisected to 1e-12
/// (then polished by Newton). `None` when no sign change is found nearby.
pub fn edge_root_near(h: &FloatPoly2, edge: Edge, level: f64, guess: f64) -> Option<f64> {
    let f = |t: f64| {
        let (x, y) = edge.position(t);
        h.eval(x, y) - level
    };
    let f0 = f(guess);
    if f0 == 0.0 {
        return Some(guess);
    }
    let mut w = 1e-9;
    let (mut a, mut b) = (guess, guess);
    let mut found = false;
    while w <= 0.25 {
        a = (guess - w).max(0.0);
        b = (guess + w).min(1.0);
        if f(a).signum() != f0.signum() {
            b = guess;
            found = true;
            break;
        }
        if f(b).signum() != f0.signum() {
            a = guess;
            found = true;
            break;
        }
        w *= 2.0;
    }
    if !found {
        return None;
    }
    let fa = f(a);
    while b - a > 1e-12 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

fn exit_edge(x: f64, y: f64) -> Edge {
    let candidates = [
        (-y, Edge::Bottom),
        (y - 1.0, Edge::Top),
        (-x, Edge::Left),
        (x - 1.0, Edge::Right),
    ];
    candidates
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, e)| e)
        .unwrap()
}

fn inside(x: f64, y: f64) -> bool {
    (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)
}

fn norm((a, b): (f64, f64)) -> f64 {
    a.hypot(b)
}

fn torus((x, y): (f64, f64)) -> TorusPoint {
    TorusPoint::canonicalize(x, y)
}

/// Symmetric Hausdorff distance between two point clouds, each densified along
/// its polylines.
pub fn hausdorff(a: &TracedCurve, b: &TracedCurve) -> f64 {
    fn directed(from: &TracedCurve, to: &TracedCurve) -> f64 {
        from.points()
            .map(|p| {
                to.segments
                    .iter()
                    .flat_map(|s| s.windows(2))
                    .map(|w| point_segment_distance(p, &w[0], &w[1]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    directed(a, b).max(directed(b, a))
}

fn point_segment_distance(p: &TorusPoint, a: &TorusPoint, b: &TorusPoint) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    };
    (p.x - a.x - s * dx).hypot(p.y - a.y - s * dy)
}

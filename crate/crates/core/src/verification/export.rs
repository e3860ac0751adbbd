//! CSV and SVG renderings of traced curves.

use std::fmt::Write;

use super::tracer::TracedCurve;
use crate::switching::EdgePoint;

pub const SVG_SIZE: f64 = 512.0;

/// `segment_index,x,y` rows, one per polyline point.
pub fn curve_to_csv(curve: &TracedCurve) -> String {
    let mut out = String::from("segment_index,x,y\n");
    for (i, seg) in curve.segments.iter().enumerate() {
        for p in seg {
            writeln!(out, "{i},{:.17e},{:.17e}", p.x, p.y).unwrap();
        }
    }
    out
}

/// `index,edge,t,class,level_before,level_after,jump` rows.
pub fn crossings_to_csv(curve: &TracedCurve) -> String {
    let mut out = String::from("index,edge,t,class,level_before,level_after,jump\n");
    for (i, c) in curve.crossings.iter().enumerate() {
        writeln!(
            out,
            "{i},{},{:.17e},{},{:.17e},{:.17e},{:.3e}",
            c.point.edge, c.point.t, c.class, c.level_before, c.level_after, c.jump
        )
        .unwrap();
    }
    out
}

/// The unit square with the polylines and seam markers, `y` pointing up.
pub fn curves_to_svg(curves: &[&TracedCurve], seams: &[EdgePoint]) -> String {
    const COLORS: [&str; 6] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
    ];
    let px = |x: f64| x * SVG_SIZE;
    let py = |y: f64| (1.0 - y) * SVG_SIZE;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SVG_SIZE
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{s}" height="{s}" fill="white" stroke="black" stroke-width="2"/>"#,
        s = SVG_SIZE
    )
    .unwrap();
    for (k, curve) in curves.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        for seg in &curve.segments {
            if seg.len() < 2 {
                continue;
            }
            let pts: Vec<String> = seg
                .iter()
                .map(|p| format!("{:.2},{:.2}", px(p.x), py(p.y)))
                .collect();
            writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            )
            .unwrap();
        }
    }
    for s in seams {
        for p in [s.clone(), s.partner()] {
            let (x, y) = p.position();
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#,
                px(x),
                py(y)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

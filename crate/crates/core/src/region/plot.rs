use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{conjugate_exponent, ComplexPoint};

/// One boundary arc of `R_p`, sampled from -1 to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryArc {
    pub arc_id: usize,
    pub points: Vec<ComplexPoint>,
}

/// CSV with header `re,im,arc_id`.
pub fn boundary_csv(arcs: &[BoundaryArc]) -> String {
    let mut out = String::from("re,im,arc_id\n");
    for arc in arcs {
        for z in &arc.points {
            let _ = writeln!(out, "{:.17e},{:.17e},{}", z.re, z.im, arc.arc_id);
        }
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 48.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = ComplexPoint>) -> Frame {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (-1.2f64, 1.2f64, -1.2f64, 1.2f64);
        for z in points {
            min_x = min_x.min(z.re);
            max_x = max_x.max(z.re);
            min_y = min_y.min(z.im);
            max_y = max_y.max(z.im);
        }
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        // centre the shorter axis
        let min_x = 0.5 * (min_x + max_x) - 0.5 * span;
        let max_y = 0.5 * (min_y + max_y) + 0.5 * span;
        Frame { min_x, max_y, scale }
    }

    fn map(&self, z: ComplexPoint) -> (f64, f64) {
        (
            MARGIN + (z.re - self.min_x) * self.scale,
            MARGIN + (self.max_y - z.im) * self.scale,
        )
    }
}

/// Catmull-Rom spline through the samples, emitted as cubic Bézier segments.
fn cubic_path(frame: &Frame, points: &[ComplexPoint]) -> String {
    let mapped: Vec<(f64, f64)> = points.iter().map(|&z| frame.map(z)).collect();
    let mut d = String::new();
    let Some(&(x0, y0)) = mapped.first() else {
        return d;
    };
    let _ = write!(d, "M {x0:.3} {y0:.3}");
    for k in 0..mapped.len().saturating_sub(1) {
        let p0 = mapped[k.saturating_sub(1)];
        let p1 = mapped[k];
        let p2 = mapped[k + 1];
        let p3 = mapped[(k + 2).min(mapped.len() - 1)];
        let c1 = (p1.0 + (p2.0 - p0.0) / 6.0, p1.1 + (p2.1 - p0.1) / 6.0);
        let c2 = (p2.0 - (p3.0 - p1.0) / 6.0, p2.1 - (p3.1 - p1.1) / 6.0);
        let _ = write!(
            d,
            " C {:.3} {:.3}, {:.3} {:.3}, {:.3} {:.3}",
            c1.0, c1.1, c2.0, c2.1, p2.0, p2.1
        );
    }
    d
}

/// Static SVG of the boundary of `R_p` with axes and markers at ±1 and
/// `i·cot(π/p)`, `i·cot(π/p')`.
pub fn boundary_svg(p: f64, arcs: &[BoundaryArc]) -> String {
    let apexes = [
        ComplexPoint::new(0.0, 1.0 / (PI / p).tan()),
        ComplexPoint::new(0.0, 1.0 / (PI / conjugate_exponent(p)).tan()),
    ];
    let frame = Frame::fit(
        arcs.iter()
            .flat_map(|a| a.points.iter().copied())
            .chain(apexes.iter().copied()),
    );
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);

    let (ox, oy) = frame.map(ComplexPoint::new(0.0, 0.0));
    let _ = writeln!(
        svg,
        r#"  <g id="axes" stroke="gray" stroke-width="1"><line x1="{:.3}" y1="{oy:.3}" x2="{:.3}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="{:.3}" x2="{ox:.3}" y2="{:.3}"/></g>"#,
        MARGIN / 2.0,
        WIDTH - MARGIN / 2.0,
        MARGIN / 2.0,
        HEIGHT - MARGIN / 2.0
    );

    for arc in arcs {
        let colour = if arc.arc_id == 0 { "#1f4e9c" } else { "#b03a2e" };
        let _ = writeln!(
            svg,
            r#"  <path id="arc-{}" d="{}" fill="none" stroke="{colour}" stroke-width="2"/>"#,
            arc.arc_id,
            cubic_path(&frame, &arc.points)
        );
    }

    let labelled = [
        (ComplexPoint::new(-1.0, 0.0), "-1".to_string()),
        (ComplexPoint::new(1.0, 0.0), "1".to_string()),
        (apexes[0], "i cot(π/p)".to_string()),
        (apexes[1], "i cot(π/p')".to_string()),
    ];
    for (z, label) in labelled {
        let (x, y) = frame.map(z);
        let _ = writeln!(
            svg,
            r#"  <g class="marker"><circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="black"/><text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="13">{label}</text></g>"#,
            x + 6.0,
            y - 6.0
        );
    }
    let _ = writeln!(
        svg,
        r#"  <text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="15">R_{p} = R_{}</text>"#,
        WIDTH - 170.0,
        MARGIN,
        (conjugate_exponent(p) * 1e6).round() / 1e6
    );
    svg.push_str("</svg>\n");
    svg
}

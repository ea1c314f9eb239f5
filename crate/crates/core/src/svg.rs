//! SVG 1.1 drawing from layout hints: under-strands broken at crossings, face areas in
//! the faces, corner signs in the quadrants.

use std::fmt::Write;

use thiserror::Error;

use crate::diagram::{EnrichedKnotDiagram, Sign};
use crate::rational::to_short;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SvgError {
    #[error(
        "diagram has no layout; use a diagram from `ekd build` or add a \"layout\" block by hand"
    )]
    MissingLayout,
    #[error("layout does not match the diagram: {0}")]
    LayoutMismatch(String),
}

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const GAP: f64 = 9.0;
const CORNER_OFFSET: f64 = 13.0;

type P = (f64, f64);

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn len(a: P) -> f64 {
    a.0.hypot(a.1)
}

fn unit(a: P) -> P {
    let l = len(a);
    if l == 0.0 {
        (0.0, 0.0)
    } else {
        (a.0 / l, a.1 / l)
    }
}

/// Moves `from` toward `to` by `gap`, at most 40% of the way.
fn pull(from: P, to: P, gap: f64) -> P {
    let v = sub(to, from);
    let t = (gap / len(v).max(f64::EPSILON)).min(0.4);
    (from.0 + v.0 * t, from.1 + v.1 * t)
}

fn seg_dist(p: P, a: P, b: P) -> f64 {
    let ab = sub(b, a);
    let l2 = ab.0 * ab.0 + ab.1 * ab.1;
    let t = if l2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * ab.0 + (p.1 - a.1) * ab.1) / l2).clamp(0.0, 1.0)
    };
    len(sub(p, (a.0 + ab.0 * t, a.1 + ab.1 * t)))
}

fn inside(p: P, poly: &[P]) -> bool {
    let mut odd = false;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if (a.1 > p.1) != (b.1 > p.1) && p.0 < a.0 + (p.1 - a.1) * (b.0 - a.0) / (b.1 - a.1) {
            odd = !odd;
        }
    }
    odd
}

/// A point well inside `poly`: the best of a grid of samples by distance to the boundary.
fn label_point(poly: &[P]) -> P {
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &(x, y) in poly {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let n = 40;
    let mut best = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
    let mut best_d = -1.0;
    for i in 1..n {
        for j in 1..n {
            let p = (
                lo.0 + (hi.0 - lo.0) * i as f64 / n as f64,
                lo.1 + (hi.1 - lo.1) * j as f64 / n as f64,
            );
            if !inside(p, poly) {
                continue;
            }
            let d = (0..poly.len())
                .map(|k| seg_dist(p, poly[k], poly[(k + 1) % poly.len()]))
                .fold(f64::MAX, f64::min);
            if d > best_d {
                best_d = d;
                best = p;
            }
        }
    }
    best
}

struct Geometry {
    /// Full polyline of each arc in pixels, tail to head.
    arcs: Vec<Vec<P>>,
    crossings: Vec<P>,
}

fn geometry(d: &EnrichedKnotDiagram) -> Result<Geometry, SvgError> {
    let layout = d.layout().ok_or(SvgError::MissingLayout)?;
    if layout.crossings.len() != d.crossings().len() || layout.arcs.len() != d.arcs().len() {
        return Err(SvgError::LayoutMismatch(format!(
            "{} crossing and {} arc entries for {} crossings and {} arcs",
            layout.crossings.len(),
            layout.arcs.len(),
            d.crossings().len(),
            d.arcs().len()
        )));
    }
    let crossings: Vec<P> = layout.crossings.iter().map(|p| p.to_f64()).collect();
    let mut arcs: Vec<Vec<P>> = vec![];
    for (i, a) in d.arcs().iter().enumerate() {
        let mut pts = vec![];
        if let Some(t) = a.tail {
            pts.push(crossings[d.darts()[t].crossing]);
        }
        pts.extend(layout.arcs[i].iter().map(|p| p.to_f64()));
        if let Some(h) = a.head {
            pts.push(crossings[d.darts()[h].crossing]);
        }
        if pts.len() < 2 {
            return Err(SvgError::LayoutMismatch(format!(
                "arc {i} has too few points"
            )));
        }
        arcs.push(pts);
    }
    // fit to the canvas, y up
    let all = arcs.iter().flatten();
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &(x, y) in all {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(f64::EPSILON);
    let s = (WIDTH - 2.0 * MARGIN) / span;
    let map = |(x, y): P| (MARGIN + (x - lo.0) * s, MARGIN + (hi.1 - y) * s);
    Ok(Geometry {
        arcs: arcs
            .into_iter()
            .map(|a| a.into_iter().map(map).collect())
            .collect(),
        crossings: crossings.into_iter().map(map).collect(),
    })
}

fn points(pts: &[P]) -> String {
    pts.iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Boundary polygon of a face, following its dart orbit.
fn face_polygon(d: &EnrichedKnotDiagram, g: &Geometry, face: usize) -> Vec<P> {
    if d.crossings().is_empty() {
        return g.arcs[0].clone();
    }
    let mut poly = vec![];
    for &dart in &d.faces()[face].boundary {
        let arc = &g.arcs[d.arc_of_dart(dart)];
        if d.is_tail(dart) {
            poly.extend(&arc[..arc.len() - 1]);
        } else {
            poly.extend(arc.iter().rev().take(arc.len() - 1));
        }
    }
    poly
}

/// Direction in which the arc at `dart` leaves its crossing, in pixels.
fn leaving(d: &EnrichedKnotDiagram, g: &Geometry, dart: usize) -> P {
    let arc = &g.arcs[d.arc_of_dart(dart)];
    let (a, b) = if d.is_tail(dart) {
        (arc[0], arc[1])
    } else {
        (arc[arc.len() - 1], arc[arc.len() - 2])
    };
    unit(sub(b, a))
}

pub fn render_svg(d: &EnrichedKnotDiagram) -> Result<String, SvgError> {
    let mut out = String::new();
    let header = |out: &mut String, h: f64| {
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{h}" viewBox="0 0 {WIDTH} {h}">"#
        );
    };
    if d.is_empty() {
        header(&mut out, WIDTH);
        out.push_str("</svg>\n");
        return Ok(out);
    }
    let g = geometry(d)?;
    let height = g.arcs.iter().flatten().map(|p| p.1).fold(0.0, f64::max) + MARGIN;
    header(&mut out, height.ceil());

    out.push_str(
        "<g fill=\"none\" stroke=\"#222\" stroke-width=\"2.5\" stroke-linejoin=\"round\">\n",
    );
    for (i, a) in d.arcs().iter().enumerate() {
        let mut pts = g.arcs[i].clone();
        let under = |dart: usize| {
            let dd = d.darts()[dart];
            dd.slot % 2 != d.over_strand(dd.crossing)
        };
        if a.tail.is_some_and(under) {
            pts[0] = pull(pts[0], pts[1], GAP);
        }
        if a.head.is_some_and(under) {
            let n = pts.len();
            pts[n - 1] = pull(pts[n - 1], pts[n - 2], GAP);
        }
        if a.tail.is_none() {
            pts.push(pts[0]);
        }
        let _ = writeln!(out, r#"  <polyline points="{}"/>"#, points(&pts));
    }
    out.push_str("</g>\n");

    // one orientation arrow per arc, at the middle of its longest segment
    out.push_str("<g fill=\"#222\">\n");
    for pts in &g.arcs {
        let (a, b) = (0..pts.len() - 1)
            .map(|k| (pts[k], pts[k + 1]))
            .max_by(|x, y| len(sub(x.1, x.0)).total_cmp(&len(sub(y.1, y.0))))
            .expect("two points");
        let m = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        let u = unit(sub(b, a));
        let n = (-u.1, u.0);
        let tip = (m.0 + u.0 * 6.0, m.1 + u.1 * 6.0);
        let l = (m.0 - u.0 * 5.0 + n.0 * 4.5, m.1 - u.1 * 5.0 + n.1 * 4.5);
        let r = (m.0 - u.0 * 5.0 - n.0 * 4.5, m.1 - u.1 * 5.0 - n.1 * 4.5);
        let _ = writeln!(out, r#"  <polygon points="{}"/>"#, points(&[tip, l, r]));
    }
    out.push_str("</g>\n");

    out.push_str(
        "<g font-family=\"sans-serif\" font-size=\"15\" fill=\"#1a4f8a\" text-anchor=\"middle\" dominant-baseline=\"middle\">\n",
    );
    for f in d.bounded_faces() {
        let p = label_point(&face_polygon(d, &g, f));
        let a = d.area(f).map(to_short).unwrap_or_else(|| "?".into());
        let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}">{a}</text>"#, p.0, p.1);
    }
    out.push_str("</g>\n");

    out.push_str(
        "<g font-family=\"sans-serif\" font-size=\"13\" font-weight=\"bold\" text-anchor=\"middle\" dominant-baseline=\"middle\">\n",
    );
    for (c, &at) in g.crossings.iter().enumerate() {
        for k in 0..4 {
            let u = leaving(d, &g, d.dart_at(c, k));
            let v = leaving(d, &g, d.dart_at(c, k + 1));
            // pixel y points down, so anticlockwise on screen is the math orientation flipped
            let mut b = unit((u.0 + v.0, u.1 + v.1));
            if len((u.0 + v.0, u.1 + v.1)) < 1e-6 {
                b = (u.1, -u.0);
            }
            let p = (at.0 + b.0 * CORNER_OFFSET, at.1 + b.1 * CORNER_OFFSET);
            let (sym, color) = match d.quadrant_sign(c, k) {
                Sign::Plus => ("+", "#b22222"),
                Sign::Minus => ("\u{2212}", "#2e7d32"),
            };
            let _ = writeln!(
                out,
                r#"  <text x="{:.2}" y="{:.2}" fill="{color}">{sym}</text>"#,
                p.0, p.1
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chain, eight};
    use crate::rational::q;

    #[test]
    fn empty_canvas() {
        let s = render_svg(&EnrichedKnotDiagram::empty()).unwrap();
        assert!(s.contains("<svg") && s.trim_end().ends_with("</svg>"));
        assert!(!s.contains("polyline"));
    }

    #[test]
    fn missing_layout() {
        let mut parts = eight(Sign::Plus, q(1)).unwrap().into_parts();
        parts.layout = None;
        let d = EnrichedKnotDiagram::new(parts).unwrap();
        assert_eq!(render_svg(&d), Err(SvgError::MissingLayout));
    }

    #[test]
    fn chain_has_four_labelled_lobes() {
        let d = chain([Sign::Minus, Sign::Plus, Sign::Plus], [q(1), q(2), q(3)]).unwrap();
        let s = render_svg(&d).unwrap();
        let labels: Vec<&str> = s
            .lines()
            .filter(|l| l.contains("<text") && !l.contains("fill="))
            .map(|l| l.split('>').nth(1).unwrap().trim_end_matches("</text"))
            .collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(sorted, ["1", "2", "2", "3"]);
    }
}

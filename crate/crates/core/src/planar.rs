//! Turns closed integer polylines into a combinatorial map with layout hints.

use std::collections::HashMap;

use num::{Signed, Zero};
use thiserror::Error;

use crate::diagram::{face_orbits, Arc, Crossing, Dart, DiagramParts, Face, Layout, Point, Sign};
use crate::rational::{q, Q};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarError {
    #[error("polyline {0} needs at least three vertices")]
    TooShort(usize),
    #[error("segments overlap or meet at a vertex; the curve is not generic")]
    Degenerate,
    #[error("three or more strands pass through one point")]
    TriplePoint,
    #[error("curve pieces do not meet; split diagrams are not supported")]
    Split,
    #[error("could not identify a unique unbounded face")]
    NoOuterFace,
}

/// A planarized curve: diagram parts (areas taken from the geometry) plus face polygons.
#[derive(Clone, Debug)]
pub struct Planarized {
    pub parts: DiagramParts,
    pub face_polygons: Vec<Vec<Point>>,
}

type P = (Q, Q);

fn sub(a: &P, b: &P) -> P {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cross(a: &P, b: &P) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

struct Hit {
    t: Q,
    crossing: usize,
}

/// Builds the map of the given closed polylines. Every crossing gets all quadrant signs
/// starting from `+` at quadrant 0; callers set the real signs afterwards.
pub fn planarize(curves: &[Vec<(i64, i64)>]) -> Result<Planarized, PlanarError> {
    for (i, c) in curves.iter().enumerate() {
        if c.len() < 3 {
            return Err(PlanarError::TooShort(i));
        }
        if (0..c.len()).any(|k| c[k] == c[(k + 1) % c.len()]) {
            return Err(PlanarError::Degenerate);
        }
    }
    let pts: Vec<Vec<P>> = curves
        .iter()
        .map(|c| c.iter().map(|&(x, y)| (q(x), q(y))).collect())
        .collect();
    // (component, segment index)
    let segs: Vec<(usize, usize)> = pts
        .iter()
        .enumerate()
        .flat_map(|(k, c)| (0..c.len()).map(move |i| (k, i)))
        .collect();
    let seg_end = |s: (usize, usize)| -> (P, P) {
        let c = &pts[s.0];
        (c[s.1].clone(), c[(s.1 + 1) % c.len()].clone())
    };

    let mut hits: Vec<Vec<Hit>> = segs.iter().map(|_| vec![]).collect();
    let mut points: Vec<P> = vec![];
    let mut crossing_dirs: Vec<(P, P)> = vec![];
    let mut seen_points: HashMap<(String, String), usize> = HashMap::new();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (a0, a1) = seg_end(segs[i]);
            let (b0, b1) = seg_end(segs[j]);
            let r = sub(&a1, &a0);
            let s = sub(&b1, &b0);
            let adjacent = segs[i].0 == segs[j].0 && {
                let n = pts[segs[i].0].len();
                (segs[i].1 + 1) % n == segs[j].1 || (segs[j].1 + 1) % n == segs[i].1
            };
            let denom = cross(&r, &s);
            let qp = sub(&b0, &a0);
            if denom.is_zero() {
                if cross(&qp, &r).is_zero() {
                    // Collinear: only a shared endpoint of consecutive segments is allowed.
                    let rr = &r.0 * &r.0 + &r.1 * &r.1;
                    let t0 = (&qp.0 * &r.0 + &qp.1 * &r.1) / &rr;
                    let d1 = sub(&b1, &a0);
                    let t1 = (&d1.0 * &r.0 + &d1.1 * &r.1) / &rr;
                    let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
                    let overlap_lo = if lo > Q::zero() { lo } else { Q::zero() };
                    let overlap_hi = if hi < q(1) { hi } else { q(1) };
                    if overlap_lo < overlap_hi || (!adjacent && overlap_lo == overlap_hi) {
                        return Err(PlanarError::Degenerate);
                    }
                }
                continue;
            }
            let lam = cross(&qp, &s) / &denom;
            let mu = cross(&qp, &r) / &denom;
            let zero = Q::zero();
            let one = q(1);
            if lam < zero || lam > one || mu < zero || mu > one {
                continue;
            }
            let at_end = lam == zero || lam == one || mu == zero || mu == one;
            if at_end {
                if adjacent {
                    continue;
                }
                return Err(PlanarError::Degenerate);
            }
            if adjacent {
                return Err(PlanarError::Degenerate);
            }
            let p = (&a0.0 + &lam * &r.0, &a0.1 + &lam * &r.1);
            let key = (p.0.to_string(), p.1.to_string());
            if seen_points.contains_key(&key) {
                return Err(PlanarError::TriplePoint);
            }
            let id = points.len();
            seen_points.insert(key, id);
            points.push(p);
            crossing_dirs.push((r.clone(), s.clone()));
            hits[i].push(Hit {
                t: lam,
                crossing: id,
            });
            hits[j].push(Hit {
                t: mu,
                crossing: id,
            });
        }
    }
    for h in &mut hits {
        h.sort_by(|a, b| a.t.cmp(&b.t));
    }

    let nc = points.len();
    // Slot assignment: slot 0 = forward along the first segment, slot 2 = backward;
    // slot 1 = whichever direction of the second segment lies counterclockwise next.
    let mut first_seg_of: Vec<Option<usize>> = vec![None; nc];
    for (si, hs) in hits.iter().enumerate() {
        for h in hs {
            if first_seg_of[h.crossing].is_none() {
                first_seg_of[h.crossing] = Some(si);
            }
        }
    }
    let b_positive_at_1: Vec<bool> = crossing_dirs
        .iter()
        .map(|(r, s)| cross(r, s).is_positive())
        .collect();
    // (incoming slot, outgoing slot) for the passage of segment `si` through crossing `c`.
    let passage_slots = |si: usize, c: usize| -> (usize, usize) {
        if first_seg_of[c] == Some(si) {
            (2, 0)
        } else if b_positive_at_1[c] {
            (3, 1)
        } else {
            (1, 3)
        }
    };

    let darts: Vec<Dart> = (0..4 * nc)
        .map(|d| Dart {
            crossing: d / 4,
            slot: d % 4,
        })
        .collect();
    let crossings: Vec<Crossing> = (0..nc)
        .map(|c| Crossing::new([4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3], Sign::Plus))
        .collect();

    let mut arcs: Vec<Arc> = vec![];
    let mut arc_paths: Vec<Vec<Point>> = vec![];
    let mut seg_offset = 0;
    let mut loop_component: Option<usize> = None;
    for (k, c) in pts.iter().enumerate() {
        let m = c.len();
        // Passages in order: (segment index within component, t, crossing)
        let mut passages: Vec<(usize, Q, usize)> = vec![];
        for i in 0..m {
            for h in &hits[seg_offset + i] {
                passages.push((i, h.t.clone(), h.crossing));
            }
        }
        if passages.is_empty() {
            loop_component = Some(k);
            arcs.push(Arc {
                tail: None,
                head: None,
                component: k,
                loop_faces: None,
            });
            arc_paths.push(
                c.iter()
                    .map(|p| Point::new(p.0.clone(), p.1.clone()))
                    .collect(),
            );
            seg_offset += m;
            continue;
        }
        let n = passages.len();
        for j in 0..n {
            let (si, ti, ci) = &passages[j];
            let (sj, tj, cj) = &passages[(j + 1) % n];
            let (_, out_slot) = passage_slots(seg_offset + si, *ci);
            let (in_slot, _) = passage_slots(seg_offset + sj, *cj);
            let count = if si == sj && tj > ti {
                0
            } else {
                let d = (sj + m - si) % m;
                if d == 0 {
                    m
                } else {
                    d
                }
            };
            let path: Vec<Point> = (1..=count)
                .map(|o| {
                    let v = &c[(si + o) % m];
                    Point::new(v.0.clone(), v.1.clone())
                })
                .collect();
            arcs.push(Arc {
                tail: Some(4 * ci + out_slot),
                head: Some(4 * cj + in_slot),
                component: k,
                loop_faces: None,
            });
            arc_paths.push(path);
        }
        seg_offset += m;
    }

    let crossing_points: Vec<Point> = points
        .iter()
        .map(|p| Point::new(p.0.clone(), p.1.clone()))
        .collect();

    if nc == 0 {
        if curves.len() != 1 {
            return Err(PlanarError::Split);
        }
        let poly = arc_paths[0].clone();
        let ccw = signed_area(&poly).is_positive();
        let inside_area = signed_area(&poly).abs();
        // Face 0 is the inside, face 1 the outside.
        arcs[0].loop_faces = Some(if ccw { (0, 1) } else { (1, 0) });
        let mut outside = poly.clone();
        outside.reverse();
        let parts = DiagramParts {
            components: 1,
            darts: vec![],
            crossings: vec![],
            arcs,
            faces: vec![
                Face {
                    boundary: vec![],
                    area: Some(inside_area),
                },
                Face {
                    boundary: vec![],
                    area: None,
                },
            ],
            outer_face: 1,
            layout: Some(Layout {
                crossings: vec![],
                arcs: arc_paths,
            }),
        };
        return Ok(Planarized {
            parts,
            face_polygons: vec![poly, outside],
        });
    }
    if loop_component.is_some() {
        return Err(PlanarError::Split);
    }

    let mut partner = vec![0; 4 * nc];
    let mut arc_of = vec![0; 4 * nc];
    for (ai, a) in arcs.iter().enumerate() {
        let (t, h) = (a.tail.unwrap(), a.head.unwrap());
        partner[t] = h;
        partner[h] = t;
        arc_of[t] = ai;
        arc_of[h] = ai;
    }
    let orbits = face_orbits(&darts, &crossings, &partner);
    let mut polygons = vec![];
    for orbit in &orbits {
        let mut poly = vec![];
        for &d in orbit {
            poly.push(crossing_points[d / 4].clone());
            let a = arc_of[d];
            let path = &arc_paths[a];
            if arcs[a].tail == Some(d) {
                poly.extend(path.iter().cloned());
            } else {
                poly.extend(path.iter().rev().cloned());
            }
        }
        polygons.push(poly);
    }
    let areas: Vec<Q> = polygons.iter().map(|p| signed_area(p)).collect();
    let negative: Vec<usize> = (0..areas.len())
        .filter(|&i| areas[i].is_negative())
        .collect();
    if negative.len() != 1 {
        return Err(if negative.is_empty() {
            PlanarError::NoOuterFace
        } else {
            PlanarError::Split
        });
    }
    let outer = negative[0];
    let faces = orbits
        .into_iter()
        .zip(&areas)
        .enumerate()
        .map(|(i, (boundary, a))| Face {
            boundary,
            area: if i == outer { None } else { Some(a.clone()) },
        })
        .collect();
    let parts = DiagramParts {
        components: curves.len(),
        darts,
        crossings,
        arcs,
        faces,
        outer_face: outer,
        layout: Some(Layout {
            crossings: crossing_points,
            arcs: arc_paths,
        }),
    };
    Ok(Planarized {
        parts,
        face_polygons: polygons,
    })
}

pub fn signed_area(poly: &[Point]) -> Q {
    let n = poly.len();
    let mut s = Q::zero();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        s += &a.x * &b.y - &b.x * &a.y;
    }
    s / q(2)
}

/// Even-odd point-in-polygon test with exact arithmetic.
pub fn contains(poly: &[Point], x: &Q, y: &Q) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if (a.y > *y) != (b.y > *y) {
            let xi = &a.x + (y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if *x < xi {
                inside = !inside;
            }
        }
    }
    inside
}

impl Planarized {
    /// Bounded face whose region contains the point.
    pub fn face_at(&self, x: Q, y: Q) -> Option<usize> {
        let outer = self.parts.outer_face;
        (0..self.face_polygons.len())
            .filter(|&f| f != outer)
            .find(|&f| contains(&self.face_polygons[f], &x, &y))
    }

    /// Sets the sign of the quadrant of `crossing` that lies in `face` (and, by alternation, all others).
    pub fn set_sign(&mut self, crossing: usize, face: usize, sign: Sign) -> bool {
        let c = &self.parts.crossings[crossing];
        let k = (0..4).find(|&k| {
            let d = c.darts[k];
            self.parts.faces[face].boundary.contains(&d)
        });
        match k {
            Some(k) => {
                let s0 = sign.alternate(k);
                self.parts.crossings[crossing] = Crossing::new(c.darts, s0);
                true
            }
            None => false,
        }
    }

    /// Crossings on the boundary of a face.
    pub fn face_crossings(&self, face: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts.faces[face]
            .boundary
            .iter()
            .map(|d| d / 4)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

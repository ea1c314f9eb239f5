//! Relabeling-invariant serialization and equivalence of diagrams.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Arc, Crossing, Dart, DiagramParts, EnrichedKnotDiagram, Face, Layout};
use crate::rational::to_pq;

/// Deterministic serialization, equal for two diagrams iff they are related by an
/// orientation-preserving map isomorphism preserving signs and areas.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

pub fn canonical_form(d: &EnrichedKnotDiagram) -> CanonicalForm {
    form(d, true)
}

/// Canonical form with the face areas left out: equal iff the diagrams have the same
/// combinatorial type and signs.
pub fn shape_form(d: &EnrichedKnotDiagram) -> CanonicalForm {
    form(d, false)
}

fn form(d: &EnrichedKnotDiagram, areas: bool) -> CanonicalForm {
    if d.is_empty() {
        return CanonicalForm("empty".into());
    }
    if d.crossings().is_empty() {
        let inner = d.bounded_faces().next().expect("circle has an inside");
        let mut s = format!("circle;w{}", d.winding(inner));
        if areas {
            s.push_str(&format!(
                ";a{}",
                to_pq(d.area(inner).expect("bounded face"))
            ));
        }
        return CanonicalForm(s);
    }
    let best = (0..d.darts().len())
        .map(|root| serialize_from(d, root, areas).0)
        .min()
        .expect("diagram has darts");
    CanonicalForm(best)
}

/// Face correspondences `a -> b` of every sign-preserving isomorphism of the underlying
/// maps (areas ignored). Empty when the shapes differ.
pub fn face_matchings(a: &EnrichedKnotDiagram, b: &EnrichedKnotDiagram) -> Vec<Vec<usize>> {
    if a.faces().len() != b.faces().len() || shape_form(a) != shape_form(b) {
        return vec![];
    }
    if a.crossings().is_empty() {
        let mut m = vec![0; a.faces().len()];
        m[a.outer_face()] = b.outer_face();
        if let (Some(x), Some(y)) = (a.bounded_faces().next(), b.bounded_faces().next()) {
            m[x] = y;
        }
        return vec![m];
    }
    let (sa, fa) = serialize_from(a, 0, false);
    let mut out: Vec<Vec<usize>> = vec![];
    for root in 0..b.darts().len() {
        let (sb, fb) = serialize_from(b, root, false);
        if sb != sa {
            continue;
        }
        let mut m = vec![0; a.faces().len()];
        for (x, y) in fa.iter().zip(&fb) {
            m[*x] = *y;
        }
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// Serialization of the map traversed breadth-first from `root`, crossing by crossing,
/// with the faces in order of first appearance.
fn serialize_from(d: &EnrichedKnotDiagram, root: usize, areas: bool) -> (String, Vec<usize>) {
    let nc = d.crossings().len();
    let mut label: Vec<Option<(usize, usize)>> = vec![None; nc]; // (label, slot offset)
    let mut face_label: Vec<Option<usize>> = vec![None; d.faces().len()];
    let mut face_order = vec![];
    let mut comp_label: Vec<Option<usize>> = vec![None; d.component_count()];
    let mut out = String::new();
    let mut next = 0;
    let mut queue = VecDeque::new();
    let r = d.darts()[root];
    label[r.crossing] = Some((0, r.slot));
    next += 1;
    queue.push_back(r.crossing);
    while let Some(c) = queue.pop_front() {
        let (_, off) = label[c].unwrap();
        out.push('|');
        out.push(match d.quadrant_sign(c, off) {
            crate::Sign::Plus => '+',
            crate::Sign::Minus => '-',
        });
        for k in 0..4 {
            let dart = d.dart_at(c, off + k);
            let p = d.darts()[d.partner(dart)];
            let (pl, poff) = match label[p.crossing] {
                Some(x) => x,
                None => {
                    let x = (next, p.slot);
                    next += 1;
                    label[p.crossing] = Some(x);
                    queue.push_back(p.crossing);
                    x
                }
            };
            let rel = (p.slot + 4 - poff) % 4;
            let comp = d.arcs()[d.arc_of_dart(dart)].component;
            let n = comp_label.iter().flatten().count();
            let cl = *comp_label[comp].get_or_insert(n);
            let f = d.face_of_dart(dart);
            let seen = face_label.iter().flatten().count();
            let fl = match face_label[f] {
                Some(x) => x.to_string(),
                None => {
                    face_label[f] = Some(seen);
                    face_order.push(f);
                    match d.area(f) {
                        Some(_) if !areas => seen.to_string(),
                        Some(a) => format!("{seen}={}", to_pq(a)),
                        None => format!("{seen}=out"),
                    }
                }
            };
            let dir = if d.is_tail(dart) { 'o' } else { 'i' };
            out.push_str(&format!(";{pl}.{rel}{dir}k{cl}f{fl}"));
        }
    }
    (out, face_order)
}

pub fn are_equivalent(a: &EnrichedKnotDiagram, b: &EnrichedKnotDiagram) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// Index permutations and per-crossing slot rotations applied by [`relabel`].
/// `perm[i]` is the new index of old item `i`.
#[derive(Clone, Debug)]
pub struct Relabeling {
    pub darts: Vec<usize>,
    pub crossings: Vec<usize>,
    pub arcs: Vec<usize>,
    pub faces: Vec<usize>,
    pub components: Vec<usize>,
    /// Old slot `k` of crossing `c` becomes slot `(k + rotate[c]) % 4`.
    pub rotate: Vec<usize>,
}

impl Relabeling {
    pub fn identity(d: &EnrichedKnotDiagram) -> Relabeling {
        Relabeling {
            darts: (0..d.darts().len()).collect(),
            crossings: (0..d.crossings().len()).collect(),
            arcs: (0..d.arcs().len()).collect(),
            faces: (0..d.faces().len()).collect(),
            components: (0..d.component_count()).collect(),
            rotate: vec![0; d.crossings().len()],
        }
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Same diagram with every identifier renamed; the result is equivalent to the input.
pub fn relabel(d: &EnrichedKnotDiagram, r: &Relabeling) -> EnrichedKnotDiagram {
    let p = d.parts();
    let (id, ic, ia, i_f) = (
        invert(&r.darts),
        invert(&r.crossings),
        invert(&r.arcs),
        invert(&r.faces),
    );
    let darts = id
        .iter()
        .map(|&old| {
            let x = p.darts[old];
            Dart {
                crossing: r.crossings[x.crossing],
                slot: (x.slot + r.rotate[x.crossing]) % 4,
            }
        })
        .collect();
    let crossings = ic
        .iter()
        .map(|&old| {
            let c = &p.crossings[old];
            let rot = r.rotate[old];
            let mut darts = [0; 4];
            let mut signs = c.quadrant_signs;
            for k in 0..4 {
                darts[(k + rot) % 4] = r.darts[c.darts[k]];
                signs[(k + rot) % 4] = c.quadrant_signs[k];
            }
            Crossing {
                darts,
                quadrant_signs: signs,
            }
        })
        .collect();
    let arcs = ia
        .iter()
        .map(|&old| {
            let a = &p.arcs[old];
            Arc {
                tail: a.tail.map(|t| r.darts[t]),
                head: a.head.map(|h| r.darts[h]),
                component: r.components[a.component],
                loop_faces: a.loop_faces.map(|(l, rt)| (r.faces[l], r.faces[rt])),
            }
        })
        .collect();
    let faces = i_f
        .iter()
        .map(|&old| {
            let f = &p.faces[old];
            Face {
                boundary: f.boundary.iter().map(|&x| r.darts[x]).collect(),
                area: f.area.clone(),
            }
        })
        .collect();
    let layout = p.layout.as_ref().map(|l| Layout {
        crossings: ic.iter().map(|&old| l.crossings[old].clone()).collect(),
        arcs: ia.iter().map(|&old| l.arcs[old].clone()).collect(),
    });
    EnrichedKnotDiagram::new(DiagramParts {
        components: p.components,
        darts,
        crossings,
        arcs,
        faces,
        outer_face: r.faces[p.outer_face],
        layout,
    })
    .expect("relabeling preserves validity")
}

/// Mirror image of the link through a vertical plane. The cyclic order at every crossing
/// reverses and, since anticlockwise becomes clockwise, every corner sign flips.
pub fn mirror(d: &EnrichedKnotDiagram) -> EnrichedKnotDiagram {
    let p = d.parts();
    let mut parts = p.clone();
    // old slot k becomes slot -k; new quadrant j is old quadrant 3 - j
    for x in &mut parts.darts {
        x.slot = (4 - x.slot) % 4;
    }
    for c in &mut parts.crossings {
        let old = c.clone();
        for k in 0..4 {
            c.darts[(4 - k) % 4] = old.darts[k];
            c.quadrant_signs[3 - k] = -old.quadrant_signs[k];
        }
    }
    for a in &mut parts.arcs {
        if let Some((l, r)) = a.loop_faces {
            a.loop_faces = Some((r, l));
        }
    }
    // old quadrant k is now held by the dart that sat at old slot k + 1
    for f in &mut parts.faces {
        f.boundary = f
            .boundary
            .iter()
            .rev()
            .map(|&x| {
                let dd = p.darts[x];
                p.crossings[dd.crossing].darts[(dd.slot + 1) % 4]
            })
            .collect();
    }
    if let Some(l) = &mut parts.layout {
        for pt in l.crossings.iter_mut().chain(l.arcs.iter_mut().flatten()) {
            pt.x = -pt.x.clone();
        }
    }
    EnrichedKnotDiagram::new(parts).expect("mirror keeps validity")
}

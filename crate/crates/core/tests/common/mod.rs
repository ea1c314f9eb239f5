//! Shared helpers for the integration tests: random inputs and independent oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use ekd_core::canonical::{relabel, Relabeling};
use ekd_core::diagram::Crossing;
use ekd_core::moves::{applicable_moves, apply_move, FaceDelta, MoveInstance, MoveKind};
use ekd_core::planar::{planarize, signed_area};
use ekd_core::{q, qf, EnrichedKnotDiagram, Sign, Q};

pub fn perm(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_relabeling(d: &EnrichedKnotDiagram, rng: &mut impl Rng) -> Relabeling {
    Relabeling {
        darts: perm(d.darts().len(), rng),
        crossings: perm(d.crossings().len(), rng),
        arcs: perm(d.arcs().len(), rng),
        faces: perm(d.faces().len(), rng),
        components: perm(d.component_count(), rng),
        rotate: (0..d.crossings().len())
            .map(|_| rng.gen_range(0..4))
            .collect(),
    }
}

pub fn shuffled(d: &EnrichedKnotDiagram, rng: &mut impl Rng) -> EnrichedKnotDiagram {
    relabel(d, &random_relabeling(d, rng))
}

/// A rational strictly between `lo` and `hi` on a grid of twentieths.
fn between(lo: &Q, hi: &Q, rng: &mut impl Rng) -> Q {
    lo + (hi - lo) * qf(rng.gen_range(1..20), 20)
}

/// A random admissible R0 step on `d`: every free parameter drawn inside its interval,
/// the last one solved from the signed-area equation. `None` if sampling keeps failing.
pub fn random_r0(
    d: &EnrichedKnotDiagram,
    rng: &mut impl Rng,
) -> Option<(MoveInstance, EnrichedKnotDiagram)> {
    let t = applicable_moves(d)
        .into_iter()
        .find(|t| t.kind == MoveKind::R0)?;
    let n = t.bounds.len();
    let pivot = (0..n).rev().find(|&i| t.bounds[i].coefficient != 0)?;
    for _ in 0..200 {
        let mut x = vec![Q::from_integer(0.into()); n];
        for (i, b) in t.bounds.iter().enumerate() {
            if i == pivot {
                continue;
            }
            let one = Q::from_integer(1.into());
            let lo = b
                .lower
                .clone()
                .unwrap_or_else(|| b.upper.clone().unwrap_or(one.clone()) - q(3));
            let hi = b.upper.clone().unwrap_or_else(|| lo.abs() + q(3));
            x[i] = between(&lo, &hi, rng);
        }
        let rest: Q = t
            .bounds
            .iter()
            .zip(&x)
            .enumerate()
            .filter(|(i, _)| *i != pivot)
            .map(|(_, (b, xi))| Q::from_integer(b.coefficient.into()) * xi)
            .sum();
        let c = Q::from_integer(t.bounds[pivot].coefficient.into());
        x[pivot] = (&t.rhs - rest) / c;
        if !t.bounds[pivot].contains(&x[pivot]) {
            continue;
        }
        let m = MoveInstance {
            kind: MoveKind::R0,
            site: t.site.clone(),
            epsilons: t
                .surviving
                .iter()
                .zip(&x)
                .map(|(&face, e)| FaceDelta {
                    face,
                    epsilon: e.clone(),
                })
                .collect(),
            created: vec![],
        };
        if let Ok(out) = apply_move(d, &m) {
            return Some((m, out));
        }
    }
    None
}

/// A random one-component diagram from a random integer polygon, with random corner
/// signs and the geometric face areas. At most `max_faces` bounded faces.
pub fn random_diagram(rng: &mut impl Rng, max_faces: usize) -> EnrichedKnotDiagram {
    random_polygon(rng, max_faces).1
}

/// As [`random_diagram`], also returning the polygon the diagram was drawn from.
pub fn random_polygon(
    rng: &mut impl Rng,
    max_faces: usize,
) -> (Vec<(i64, i64)>, EnrichedKnotDiagram) {
    loop {
        let n = rng.gen_range(3..=7);
        let pts: Vec<(i64, i64)> = (0..n)
            .map(|_| (rng.gen_range(0..40), rng.gen_range(0..40)))
            .collect();
        let Ok(mut p) = planarize(std::slice::from_ref(&pts)) else {
            continue;
        };
        let outer = p.parts.outer_face;
        if p.parts.faces.len() - 1 > max_faces {
            continue;
        }
        for (f, poly) in p.face_polygons.iter().enumerate() {
            p.parts.faces[f].area = (f != outer).then(|| signed_area(poly).abs());
        }
        if p.parts
            .faces
            .iter()
            .any(|f| f.area.as_ref().is_some_and(|a| !a.is_positive()))
        {
            continue;
        }
        for c in &mut p.parts.crossings {
            let s = if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            *c = Crossing::new(c.darts, s);
        }
        if let Ok(d) = EnrichedKnotDiagram::new(p.parts) {
            return (pts, d);
        }
    }
}

/// A face set viewed as a closed region.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleDisk {
    pub faces: Vec<usize>,
    pub area: Q,
    /// `(crossing, sign, convex)`, sorted.
    pub corners: Vec<(usize, i64, bool)>,
}

fn pieces(n: usize, member: &[bool], links: &[(usize, usize)]) -> usize {
    let mut adj = vec![vec![]; n];
    for &(a, b) in links {
        if member[a] && member[b] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !member[s] || seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(f) = q.pop_front() {
            for &g in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    q.push_back(g);
                }
            }
        }
    }
    count
}

/// Brute force over all nonempty sets of bounded faces. A set is a disk when it is
/// connected across arcs, its complement on the sphere is connected (no holes, one
/// boundary circle), and no crossing sees it in exactly two opposite quadrants.
pub fn brute_force_disks(d: &EnrichedKnotDiagram) -> BTreeSet<OracleDisk> {
    let nf = d.faces().len();
    let bounded: Vec<usize> = d.bounded_faces().collect();
    assert!(bounded.len() <= 12, "oracle is exponential");
    let links: Vec<(usize, usize)> = (0..d.arcs().len())
        .map(|a| (d.arc_left(a), d.arc_right(a)))
        .collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << bounded.len()) {
        let mut member = vec![false; nf];
        for (i, &f) in bounded.iter().enumerate() {
            member[f] = mask >> i & 1 == 1;
        }
        if pieces(nf, &member, &links) != 1 {
            continue;
        }
        let outside: Vec<bool> = member.iter().map(|m| !m).collect();
        if pieces(nf, &outside, &links) != 1 {
            continue;
        }
        let mut corners = vec![];
        let mut pinched = false;
        for c in 0..d.crossings().len() {
            let q: Vec<bool> = (0..4).map(|k| member[d.quadrant_face(c, k)]).collect();
            match q.iter().filter(|&&b| b).count() {
                1 => {
                    let k = q.iter().position(|&b| b).unwrap();
                    corners.push((c, d.quadrant_sign(c, k).value(), true));
                }
                2 if q[0] == q[2] => pinched = true,
                3 => {
                    let k = q.iter().position(|&b| !b).unwrap();
                    corners.push((c, -d.quadrant_sign(c, k).value(), false));
                }
                _ => {}
            }
        }
        if pinched {
            continue;
        }
        corners.sort();
        let faces: Vec<usize> = (0..nf).filter(|&f| member[f]).collect();
        let area = faces.iter().map(|&f| d.area(f).unwrap().clone()).sum();
        out.insert(OracleDisk {
            faces,
            area,
            corners,
        });
    }
    out
}

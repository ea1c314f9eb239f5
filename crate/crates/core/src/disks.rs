//! Disks bound by a diagram: connected, simply connected face unions with immersed
//! boundary, their corners, alignment and normal Maslov index.

use std::collections::BTreeSet;

use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{EnrichedKnotDiagram, Sign};
use crate::rational::{qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// A disk of a lone diagram, not part of a pair.
    Single,
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerIncidence {
    pub crossing: usize,
    /// For a convex corner the occupied quadrant; for a concave one the occupied quadrant
    /// met first along the boundary (its sign is the corner sign).
    pub quadrant: usize,
    pub sign: Sign,
    pub convex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundDisk {
    pub side: Side,
    /// Faces covered once (multiplicity 1), sorted.
    pub faces: Vec<usize>,
    /// Boundary arcs anticlockwise around the disk: `(arc, forward)`.
    pub boundary_walk: Vec<(usize, bool)>,
    /// Corners in boundary order.
    pub corners: Vec<CornerIncidence>,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub area: Q,
}

impl BoundDisk {
    pub fn multiplicity(&self, face: usize) -> u32 {
        u32::from(self.faces.binary_search(&face).is_ok())
    }

    pub fn all_convex(&self) -> bool {
        self.corners.iter().all(|c| c.convex)
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.corners.iter().map(|c| c.sign).collect()
    }

    pub fn all_signs(&self, s: Sign) -> bool {
        self.corners.iter().all(|c| c.sign == s)
    }

    /// Boundary arcs all run with the link orientation, or all against it.
    pub fn aligned(&self) -> bool {
        self.boundary_walk.iter().all(|&(_, f)| f) || self.boundary_walk.iter().all(|&(_, f)| !f)
    }

    pub fn corner_at(&self, crossing: usize) -> Option<&CornerIncidence> {
        self.corners.iter().find(|c| c.crossing == crossing)
    }

    /// Ordering key: area, then corner count, then face list.
    pub fn sort_key(&self) -> (Q, usize, Vec<usize>) {
        (self.area.clone(), self.corners.len(), self.faces.clone())
    }

    pub fn with_side(mut self, side: Side) -> BoundDisk {
        self.side = side;
        self
    }

    /// Short human label such as `lower{1,3}`.
    pub fn label(&self) -> String {
        let side = match self.side {
            Side::Single => "",
            Side::Lower => "lower",
            Side::Upper => "upper",
        };
        let faces: Vec<String> = self.faces.iter().map(|f| f.to_string()).collect();
        format!("{side}{{{}}}", faces.join(","))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DiskOptions {
    pub max_corners: Option<usize>,
    pub require_convex: bool,
    /// Upper bound on the number of faces in a disk; `None` for no bound.
    pub max_faces: Option<usize>,
}

/// Local pattern of a face set at one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerPattern {
    Untouched,
    Convex,
    Smooth,
    Concave,
    Interior,
    /// Two opposite quadrants only: not an immersed boundary point.
    Node,
}

pub fn classify(inside: [bool; 4]) -> CornerPattern {
    match inside.iter().filter(|&&b| b).count() {
        0 => CornerPattern::Untouched,
        1 => CornerPattern::Convex,
        2 if inside[0] == inside[2] => CornerPattern::Node,
        2 => CornerPattern::Smooth,
        3 => CornerPattern::Concave,
        _ => CornerPattern::Interior,
    }
}

fn quadrant_pattern(d: &EnrichedKnotDiagram, member: &[bool], c: usize) -> [bool; 4] {
    [0, 1, 2, 3].map(|k| member[d.quadrant_face(c, k)])
}

/// Builds the disk for a face set, or `None` if the set is not a disk bound by `d`.
pub fn disk_from_faces(d: &EnrichedKnotDiagram, faces: &[usize]) -> Option<BoundDisk> {
    let nf = d.faces().len();
    let mut member = vec![false; nf];
    for &f in faces {
        if f >= nf || f == d.outer_face() || member[f] {
            return None;
        }
        member[f] = true;
    }
    if faces.is_empty() {
        return None;
    }
    let mut sorted = faces.to_vec();
    sorted.sort_unstable();
    let area: Q = sorted
        .iter()
        .map(|&f| d.area(f).cloned().unwrap_or_else(Q::zero))
        .sum();

    if d.crossings().is_empty() {
        // the only bounded face of a circle
        let a = 0;
        let forward = d.arc_left(a) == sorted[0];
        return Some(BoundDisk {
            side: Side::Single,
            faces: sorted,
            boundary_walk: vec![(a, forward)],
            corners: vec![],
            area,
        });
    }

    // immersed boundary and Euler characteristic of the closed face union
    let mut vertices = 0i64;
    for c in 0..d.crossings().len() {
        match classify(quadrant_pattern(d, &member, c)) {
            CornerPattern::Node => return None,
            CornerPattern::Untouched => {}
            _ => vertices += 1,
        }
    }
    let mut edges = 0i64;
    let mut boundary_arcs = vec![];
    for a in 0..d.arcs().len() {
        let (l, r) = (member[d.arc_left(a)], member[d.arc_right(a)]);
        if l || r {
            edges += 1;
        }
        if l != r {
            boundary_arcs.push(a);
        }
    }
    if vertices - edges + sorted.len() as i64 != 1 || !connected(d, &member, &sorted) {
        return None;
    }

    // walk the boundary anticlockwise (disk on the left)
    let first = *boundary_arcs.first()?;
    let mut walk = vec![];
    let mut corners = vec![];
    let mut a = first;
    loop {
        let forward = member[d.arc_left(a)];
        walk.push((a, forward));
        let arc = &d.arcs()[a];
        let arrive = if forward { arc.head } else { arc.tail }.expect("crossing arc");
        let dart = d.darts()[arrive];
        let (c, k) = (dart.crossing, dart.slot);
        let mut m = 0;
        while m < 4 && member[d.quadrant_face(c, k + 4 - 1 - m)] {
            m += 1;
        }
        let leave = (k + 4 - m) % 4;
        let q = (k + 3) % 4;
        match m {
            1 => corners.push(CornerIncidence {
                crossing: c,
                quadrant: q,
                sign: d.quadrant_sign(c, q),
                convex: true,
            }),
            3 => corners.push(CornerIncidence {
                crossing: c,
                quadrant: q,
                sign: d.quadrant_sign(c, q),
                convex: false,
            }),
            2 => {}
            _ => return None,
        }
        a = d.arc_of_dart(d.dart_at(c, leave));
        if a == first {
            break;
        }
        if walk.len() > boundary_arcs.len() {
            return None;
        }
    }
    if walk.len() != boundary_arcs.len() {
        // more than one boundary circle
        return None;
    }
    Some(BoundDisk {
        side: Side::Single,
        faces: sorted,
        boundary_walk: walk,
        corners,
        area,
    })
}

/// Faces in `faces` form one piece when glued along shared arcs.
fn connected(d: &EnrichedKnotDiagram, member: &[bool], faces: &[usize]) -> bool {
    let mut seen = BTreeSet::from([faces[0]]);
    let mut stack = vec![faces[0]];
    let adj = face_adjacency(d);
    while let Some(f) = stack.pop() {
        for &g in &adj[f] {
            if member[g] && seen.insert(g) {
                stack.push(g);
            }
        }
    }
    seen.len() == faces.len()
}

/// Bounded faces sharing an arc.
pub fn face_adjacency(d: &EnrichedKnotDiagram) -> Vec<Vec<usize>> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); d.faces().len()];
    for a in 0..d.arcs().len() {
        let (l, r) = (d.arc_left(a), d.arc_right(a));
        if l != r && l != d.outer_face() && r != d.outer_face() {
            adj[l].insert(r);
            adj[r].insert(l);
        }
    }
    adj.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// All multiplicity-one disks bound by `d` that pass the filters, sorted by
/// (area, corner count, faces).
pub fn enumerate_disks(d: &EnrichedKnotDiagram, opts: &DiskOptions) -> Vec<BoundDisk> {
    let adj = face_adjacency(d);
    let bounded: Vec<usize> = d.bounded_faces().collect();
    let mut out = vec![];
    let limit = opts.max_faces.unwrap_or(usize::MAX);
    for &v in &bounded {
        let ext: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
        grow(&adj, &mut vec![v], ext, v, limit, &mut |faces| {
            if let Some(disk) = disk_from_faces(d, faces) {
                if passes(&disk, opts) {
                    out.push(disk);
                }
            }
        });
    }
    out.sort_by_key(|x| x.sort_key());
    out
}

fn passes(disk: &BoundDisk, opts: &DiskOptions) -> bool {
    opts.max_corners.is_none_or(|m| disk.corners.len() <= m)
        && (!opts.require_convex || disk.all_convex())
}

/// Visits each connected face set whose least face is `v` exactly once.
fn grow(
    adj: &[Vec<usize>],
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    v: usize,
    limit: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(sub);
    if sub.len() >= limit {
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in &adj[w] {
            if u > v
                && !sub.contains(&u)
                && u != w
                && !next.contains(&u)
                && !sub.iter().any(|&s| adj[s].contains(&u))
            {
                next.push(u);
            }
        }
        sub.push(w);
        grow(adj, sub, next, v, limit, visit);
        sub.pop();
    }
}

/// Normal Maslov contribution of consecutive corner signs `(a, b)`.
pub fn maslov_entry(side: Side, a: Sign, b: Sign) -> Q {
    use Sign::{Minus as M, Plus as P};
    let upper = |a, b| match (a, b) {
        (M, M) => qf(-1, 1),
        (M, P) => qf(-1, 4),
        (P, P) => qf(0, 1),
        (P, M) => qf(-3, 4),
    };
    match side {
        Side::Lower => upper(-a, -b),
        _ => upper(a, b),
    }
}

/// Table sum over cyclically consecutive corner signs; 0 for no corners.
pub fn maslov_sum(side: Side, signs: &[Sign]) -> Q {
    let n = signs.len();
    (0..n)
        .map(|i| maslov_entry(side, signs[i], signs[(i + 1) % n]))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiskAnalysis {
    pub all_convex: bool,
    pub corner_sign_profile: Vec<Sign>,
    pub aligned: bool,
    /// `μ₂`, absent when a corner is not convex.
    pub maslov_normal: Option<i64>,
    pub expected_dim: Option<i64>,
}

pub fn disk_analysis(disk: &BoundDisk, side: Side) -> DiskAnalysis {
    let signs = disk.signs();
    let all_convex = disk.all_convex();
    let maslov_normal = all_convex.then(|| {
        let m = maslov_sum(side, &signs);
        assert!(m.is_integer(), "cyclic table sums are integral");
        i64::try_from(m.to_integer()).expect("small")
    });
    DiskAnalysis {
        all_convex,
        corner_sign_profile: signs,
        aligned: disk.aligned(),
        maslov_normal,
        expected_dim: maslov_normal.map(|m| m + 1),
    }
}

/// Every corner crossing of `a` is one of `b` with the same sign, and vice versa.
/// Disks of different diagrams only share corners vacuously (both cornerless).
pub fn shares_all_corners(a: &BoundDisk, b: &BoundDisk) -> bool {
    if a.side != b.side {
        return a.corners.is_empty() && b.corners.is_empty();
    }
    let covered = |x: &BoundDisk, y: &BoundDisk| {
        x.corners
            .iter()
            .all(|c| y.corner_at(c.crossing).is_some_and(|o| o.sign == c.sign))
    };
    covered(a, b) && covered(b, a)
}

/// `q` is a corner of both disks with the same sign.
pub fn shares_corner(a: &BoundDisk, b: &BoundDisk, crossing: usize) -> bool {
    a.side == b.side
        && match (a.corner_at(crossing), b.corner_at(crossing)) {
            (Some(x), Some(y)) => x.sign == y.sign,
            _ => false,
        }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiskError {
    #[error("disk {0} is not a big disk of this pair")]
    NotBig(String),
}

/// Which clause of the little-disk definition a disk satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LittleCase {
    /// Both on the upper diagram.
    A,
    /// Both on the lower diagram.
    B,
    /// Big disk upper, little disk lower with positive corners.
    C,
    /// Big disk lower, little disk upper with negative corners.
    D,
}

/// Big-disk test given the pair's knot areas.
pub fn is_big(disk: &BoundDisk, area_lower: &Q, area_upper: &Q) -> bool {
    let sign_ok = match disk.side {
        Side::Lower => disk.all_signs(Sign::Minus),
        Side::Upper => disk.all_signs(Sign::Plus),
        Side::Single => false,
    };
    let area_ok = (area_lower.is_zero() && area_upper.is_zero()) || disk.area <= *area_lower;
    disk.all_convex() && sign_ok && disk.aligned() && area_ok
}

/// Clause under which `b` is a little disk relative to the big disk `a`, if any.
pub fn little_case(a: &BoundDisk, b: &BoundDisk) -> Option<LittleCase> {
    if a.side == b.side && a.faces == b.faces {
        return None;
    }
    let shares_every_corner_of_a = || {
        a.corners
            .iter()
            .all(|c| b.corner_at(c.crossing).is_some_and(|o| o.sign == c.sign))
    };
    let same_side = |special: Sign| {
        let ok = b.corners.iter().all(|c| {
            if c.sign == special {
                shares_corner(a, b, c.crossing)
            } else {
                true
            }
        });
        let has_other = b.corners.iter().any(|c| c.sign != special);
        ok && (has_other || shares_every_corner_of_a())
    };
    let needs_corner = a.corners.is_empty() || !b.corners.is_empty();
    match (a.side, b.side) {
        (Side::Upper, Side::Upper) => same_side(Sign::Plus).then_some(LittleCase::A),
        (Side::Lower, Side::Lower) => same_side(Sign::Minus).then_some(LittleCase::B),
        (Side::Upper, Side::Lower) => {
            (b.all_signs(Sign::Plus) && needs_corner).then_some(LittleCase::C)
        }
        (Side::Lower, Side::Upper) => {
            (b.all_signs(Sign::Minus) && needs_corner).then_some(LittleCase::D)
        }
        _ => None,
    }
}

/// All disks of a pair, each tagged with its side.
pub fn pair_disks(lower: &EnrichedKnotDiagram, upper: &EnrichedKnotDiagram) -> Vec<BoundDisk> {
    let opts = DiskOptions::default();
    let mut all: Vec<BoundDisk> = enumerate_disks(lower, &opts)
        .into_iter()
        .map(|x| x.with_side(Side::Lower))
        .collect();
    all.extend(
        enumerate_disks(upper, &opts)
            .into_iter()
            .map(|x| x.with_side(Side::Upper)),
    );
    all
}

pub fn big_disks_among(disks: &[BoundDisk], area_lower: &Q, area_upper: &Q) -> Vec<BoundDisk> {
    disks
        .iter()
        .filter(|x| is_big(x, area_lower, area_upper))
        .cloned()
        .collect()
}

pub fn little_disks_among(disks: &[BoundDisk], big: &BoundDisk) -> Vec<(BoundDisk, LittleCase)> {
    disks
        .iter()
        .filter_map(|b| little_case(big, b).map(|c| (b.clone(), c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{eight, trefoil, unknot};
    use crate::rational::q;

    #[test]
    fn unknot_has_one_disk() {
        let d = unknot(q(1)).unwrap();
        let disks = enumerate_disks(&d, &DiskOptions::default());
        assert_eq!(disks.len(), 1);
        assert!(disks[0].corners.is_empty());
        assert!(disks[0].aligned());
    }

    #[test]
    fn eight_lobes_only() {
        let d = eight(Sign::Plus, q(1)).unwrap();
        let disks = enumerate_disks(&d, &DiskOptions::default());
        assert_eq!(disks.len(), 2);
        for x in &disks {
            assert_eq!(x.corners.len(), 1);
            assert!(x.corners[0].convex);
            assert_eq!(x.corners[0].sign, Sign::Plus);
        }
        assert_eq!(classify([true, false, true, false]), CornerPattern::Node);
    }

    #[test]
    fn trefoil_center_has_three_negative_corners() {
        let d = trefoil(Sign::Minus, [q(1), q(1), q(1)], q(2)).unwrap();
        let disks = enumerate_disks(&d, &DiskOptions::default());
        let center = disks.iter().find(|x| x.area == q(2)).unwrap();
        assert_eq!(center.signs(), vec![Sign::Minus; 3]);
        assert!(center.aligned());
        let whole = disks.iter().find(|x| x.faces.len() == 4).unwrap();
        assert!(whole
            .corners
            .iter()
            .all(|c| !c.convex && c.sign == Sign::Plus));
    }

    #[test]
    fn maslov_examples() {
        use Sign::*;
        assert_eq!(maslov_sum(Side::Upper, &[Plus, Plus, Plus]), q(0));
        assert_eq!(maslov_sum(Side::Lower, &[Minus, Minus]), q(0));
        assert_eq!(maslov_sum(Side::Upper, &[Plus, Minus]), q(-1));
        assert_eq!(maslov_sum(Side::Upper, &[]), q(0));
    }
}

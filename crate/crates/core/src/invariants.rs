//! Winding numbers, areas, writhe, rotation number, the writhe/Euler relation
//! and the Legendrian representability test.

use std::collections::VecDeque;

use num::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{EnrichedKnotDiagram, Sign};
use crate::rational::Q;

/// Winding numbers of the sub-curve given by per-arc weights (+1 forward, -1 backward, 0 absent).
/// Outer face gets 0; crossing an arc of weight `c` from right to left adds `c`.
pub fn weighted_windings(d: &EnrichedKnotDiagram, weight: impl Fn(usize) -> i64) -> Vec<i64> {
    let nf = d.faces().len();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![vec![]; nf];
    for a in 0..d.arcs().len() {
        let (l, r, c) = (d.arc_left(a), d.arc_right(a), weight(a));
        adj[r].push((l, c));
        adj[l].push((r, -c));
    }
    let mut w: Vec<Option<i64>> = vec![None; nf];
    w[d.outer_face()] = Some(0);
    let mut queue = VecDeque::from([d.outer_face()]);
    while let Some(f) = queue.pop_front() {
        let base = w[f].unwrap();
        for &(g, c) in &adj[f] {
            if w[g].is_none() {
                w[g] = Some(base + c);
                queue.push_back(g);
            }
        }
    }
    w.into_iter().map(|x| x.unwrap_or(0)).collect()
}

pub fn winding_numbers(d: &EnrichedKnotDiagram) -> Vec<i64> {
    d.windings().to_vec()
}

fn weighted_area(d: &EnrichedKnotDiagram, w: &[i64]) -> Q {
    d.bounded_faces()
        .map(|f| d.area(f).cloned().unwrap_or_else(Q::zero) * Q::from_integer(w[f].into()))
        .sum()
}

/// Σ winding(F)·area(F) over bounded faces.
pub fn total_signed_area(d: &EnrichedKnotDiagram) -> Q {
    weighted_area(d, d.windings())
}

/// Signed area enclosed by one component alone.
pub fn component_signed_area(d: &EnrichedKnotDiagram, component: usize) -> Q {
    let w = component_windings(d, component);
    weighted_area(d, &w)
}

fn component_windings(d: &EnrichedKnotDiagram, component: usize) -> Vec<i64> {
    weighted_windings(d, |a| i64::from(d.arcs()[a].component == component))
}

/// `a(K) = |Σ winding·area|`.
pub fn knot_area(d: &EnrichedKnotDiagram) -> Q {
    total_signed_area(d).abs()
}

pub fn is_exact(d: &EnrichedKnotDiagram) -> bool {
    total_signed_area(d).is_zero()
}

pub fn writhe(d: &EnrichedKnotDiagram) -> i64 {
    (0..d.crossings().len()).map(|c| d.crossing_sign(c)).sum()
}

fn is_self_crossing(d: &EnrichedKnotDiagram, c: usize, component: usize) -> bool {
    d.component_of_crossing_strand(c, 0) == component
        && d.component_of_crossing_strand(c, 1) == component
}

/// Whitney's formula: `μ + Σ ε_p` over self-crossings of the component.
///
/// The base point sits on an arc bounding the unbounded region of the component's own
/// complement; `μ = +1` when that region lies to the right (anticlockwise traversal).
/// `ε_p = -1` when the second passage through `p` crosses the first from right to left.
pub fn rotation_number(d: &EnrichedKnotDiagram, component: usize) -> i64 {
    let arcs = d.component_arcs(component);
    if arcs.is_empty() {
        return 0;
    }
    let outside = reachable_without(d, component);
    let base_pos = arcs
        .iter()
        .position(|&a| outside[d.arc_left(a)] || outside[d.arc_right(a)])
        .expect("some arc of a component borders its outside");
    let base = arcs[base_pos];
    let mu = if outside[d.arc_right(base)] { 1 } else { -1 };

    let mut first_out: Vec<Option<usize>> = vec![None; d.crossings().len()];
    let mut eps = 0;
    for i in 0..arcs.len() {
        let a = arcs[(base_pos + i) % arcs.len()];
        let Some(h) = d.arcs()[a].head else { continue };
        let dart = d.darts()[h];
        let c = dart.crossing;
        if !is_self_crossing(d, c, component) {
            continue;
        }
        let out = (dart.slot + 2) % 4;
        match first_out[c] {
            None => first_out[c] = Some(out),
            Some(first) => {
                // second passage leaves a quarter turn anticlockwise of the first:
                // it crosses the first from right to left.
                eps += if out == (first + 1) % 4 { -1 } else { 1 };
            }
        }
    }
    mu + eps
}

/// Faces reachable from the outer face without crossing an arc of `component`.
fn reachable_without(d: &EnrichedKnotDiagram, component: usize) -> Vec<bool> {
    let nf = d.faces().len();
    let mut adj: Vec<Vec<usize>> = vec![vec![]; nf];
    for (i, a) in d.arcs().iter().enumerate() {
        if a.component != component {
            adj[d.arc_left(i)].push(d.arc_right(i));
            adj[d.arc_right(i)].push(d.arc_left(i));
        }
    }
    let mut seen = vec![false; nf];
    seen[d.outer_face()] = true;
    let mut queue = VecDeque::from([d.outer_face()]);
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    seen
}

/// Rotation numbers of all components, in component order.
pub fn rotation_numbers(d: &EnrichedKnotDiagram) -> Vec<i64> {
    (0..d.component_count())
        .map(|k| rotation_number(d, k))
        .collect()
}

/// Sign convention `s` in `χ = s·(wr(lower) − wr(upper))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum EulerSign {
    #[serde(rename = "+")]
    #[default]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl EulerSign {
    pub fn value(self) -> i64 {
        match self {
            EulerSign::Plus => 1,
            EulerSign::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReading {
    pub convention: EulerSign,
    pub chi: i64,
    /// Some `g ≥ 0`, `b ≥ c₁ + c₂` realizes `χ = 2 − 2g − b`.
    pub feasible: bool,
    /// Smallest-genus surfaces with exactly `c₁ + c₂` boundary circles, if any.
    pub exact_boundary_genus: Option<i64>,
    /// All `(g, b)` with `b ≥ c₁ + c₂` (listed up to `b = c₁ + c₂ + 2`).
    pub surfaces: Vec<(i64, i64)>,
}

/// `χ` forced by the writhes, with its topological feasibility.
pub fn euler_reading(wr_lower: i64, wr_upper: i64, boundary: i64, s: EulerSign) -> EulerReading {
    let chi = s.value() * (wr_lower - wr_upper);
    let mut surfaces = vec![];
    for b in boundary..=boundary + 2 {
        let twice_g = 2 - b - chi;
        if twice_g >= 0 && twice_g % 2 == 0 {
            surfaces.push((twice_g / 2, b));
        }
    }
    let exact = 2 - boundary - chi;
    EulerReading {
        convention: s,
        chi,
        feasible: chi <= 2 - boundary,
        exact_boundary_genus: (exact >= 0 && exact % 2 == 0).then_some(exact / 2),
        surfaces,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadrantCheck {
    pub quadrant: usize,
    pub sign: Sign,
    /// Signed areas of the loops at the crossing through the quadrant's two boundary rays,
    /// each parametrized anticlockwise along the quadrant.
    #[serde(serialize_with = "crate::rational::ser_q_vec")]
    pub loop_areas: Vec<Q>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingCheck {
    pub crossing: usize,
    pub quadrants: Vec<QuadrantCheck>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegendrianReport {
    pub representable: bool,
    pub exact: bool,
    pub crossings: Vec<CrossingCheck>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("legendrian test needs a knot, got {0} components")]
    NotAKnot(usize),
}

/// Arc weights of the loop leaving `crossing` through `out_dart` and first returning to it.
fn loop_weights(d: &EnrichedKnotDiagram, out_dart: usize) -> Vec<i64> {
    let crossing = d.darts()[out_dart].crossing;
    let mut w = vec![0; d.arcs().len()];
    let mut a = d.arc_of_dart(out_dart);
    loop {
        w[a] = 1;
        let h = d.arcs()[a].head.expect("crossing arcs have heads");
        if d.darts()[h].crossing == crossing {
            return w;
        }
        a = d.next_arc(a);
    }
}

/// Knot has a Legendrian representative iff it is exact and at every crossing each corner's
/// sign equals the sign of the area of the loop through that corner.
pub fn legendrian_representable(
    d: &EnrichedKnotDiagram,
) -> Result<LegendrianReport, InvariantError> {
    if d.component_count() != 1 {
        return Err(InvariantError::NotAKnot(d.component_count()));
    }
    let exact = is_exact(d);
    let mut crossings = vec![];
    for c in 0..d.crossings().len() {
        // loop through a ray: keyed by the out-dart that starts it
        let loop_of_ray = |slot: usize| -> (usize, bool) {
            let dart = d.dart_at(c, slot);
            if d.is_tail(dart) {
                (dart, true)
            } else {
                // the in-ray ends the loop that started at the other strand's out-dart
                let other = if d.is_tail(d.dart_at(c, slot + 1)) {
                    d.dart_at(c, slot + 1)
                } else {
                    d.dart_at(c, slot + 3)
                };
                (other, false)
            }
        };
        let mut quadrants = vec![];
        for k in 0..4 {
            let sign = d.quadrant_sign(c, k);
            let mut loop_areas = vec![];
            // outward along ray k, inward along ray k+1
            for (slot, outward) in [(k, true), (k + 1, false)] {
                let (start, ray_is_out) = loop_of_ray(slot % 4);
                let weights = loop_weights(d, start);
                let w = weighted_windings(d, |a| weights[a]);
                let area = weighted_area(d, &w);
                let forward = ray_is_out == outward;
                loop_areas.push(if forward { area } else { -area });
            }
            let ok = loop_areas
                .iter()
                .all(|a| !a.is_zero() && (a.is_positive() == (sign == Sign::Plus)));
            quadrants.push(QuadrantCheck {
                quadrant: k,
                sign,
                loop_areas,
                ok,
            });
        }
        let ok = quadrants.iter().all(|q| q.ok);
        crossings.push(CrossingCheck {
            crossing: c,
            quadrants,
            ok,
        });
    }
    let representable = exact && crossings.iter().all(|c| c.ok);
    Ok(LegendrianReport {
        representable,
        exact,
        crossings,
    })
}

/// Everything `ekd info` prints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramSummary {
    pub crossings: usize,
    pub components: usize,
    pub bounded_faces: usize,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub signed_area: Q,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub knot_area: Q,
    pub exact: bool,
    pub writhe: i64,
    pub rotation: Vec<i64>,
    pub legendrian: Option<bool>,
}

pub fn summarize(d: &EnrichedKnotDiagram) -> DiagramSummary {
    DiagramSummary {
        crossings: d.crossings().len(),
        components: d.component_count(),
        bounded_faces: d.bounded_faces().count(),
        signed_area: total_signed_area(d),
        knot_area: knot_area(d),
        exact: is_exact(d),
        writhe: writhe(d),
        rotation: rotation_numbers(d),
        legendrian: legendrian_representable(d).ok().map(|r| r.representable),
    }
}

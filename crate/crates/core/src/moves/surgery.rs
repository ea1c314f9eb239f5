//! Dart-level rewiring shared by the combinatorial moves, and the bookkeeping that decides
//! which faces survive a move.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{face_orbits, Arc, Crossing, Dart, DiagramParts, EnrichedKnotDiagram, Face};
use crate::Sign;

use super::MoveError;

#[derive(Clone, Debug)]
pub(crate) struct WireArc {
    pub tail: usize,
    pub head: usize,
    /// Old arcs this arc continues; empty for arcs the move creates.
    pub origin: Vec<usize>,
}

/// Result of a surgery before areas are assigned.
#[derive(Clone, Debug)]
pub(crate) struct Rebuilt {
    /// Parts with every area `None`.
    pub parts: DiagramParts,
    /// For each new face, the old bounded face it continues.
    pub survivor_of: Vec<Option<usize>>,
}

impl Rebuilt {
    /// Same combinatorial type (R0).
    pub fn identity(d: &EnrichedKnotDiagram) -> Rebuilt {
        let mut parts = d.parts().clone();
        for f in &mut parts.faces {
            f.area = None;
        }
        let survivor_of = (0..d.faces().len())
            .map(|f| (f != d.outer_face()).then_some(f))
            .collect();
        Rebuilt { parts, survivor_of }
    }

    /// Bounded faces with no old counterpart, in face order.
    pub fn created(&self) -> Vec<usize> {
        (0..self.parts.faces.len())
            .filter(|&f| f != self.parts.outer_face && self.survivor_of[f].is_none())
            .collect()
    }

    /// The diagram with placeholder unit areas, for windings and validity.
    pub fn shape(&self) -> Result<EnrichedKnotDiagram, MoveError> {
        let mut parts = self.parts.clone();
        let outer = parts.outer_face;
        for (i, f) in parts.faces.iter_mut().enumerate() {
            f.area = (i != outer).then(|| crate::q(1));
        }
        EnrichedKnotDiagram::new(parts).map_err(|r| MoveError::Invalid(r.to_string()))
    }
}

pub(crate) struct Wiring<'a> {
    old: &'a EnrichedKnotDiagram,
    darts: Vec<Option<Dart>>,
    crossings: Vec<Option<Crossing>>,
    arcs: Vec<Option<WireArc>>,
    /// Extra (old face, dart) pairs: the new face holding the dart continues the old face.
    anchors: Vec<(usize, usize)>,
}

impl<'a> Wiring<'a> {
    pub fn new(old: &'a EnrichedKnotDiagram) -> Wiring<'a> {
        let arcs = old
            .arcs()
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                Some(Some(WireArc {
                    tail: a.tail?,
                    head: a.head?,
                    origin: vec![i],
                }))
            })
            .collect();
        Wiring {
            old,
            darts: old.darts().iter().copied().map(Some).collect(),
            crossings: old.crossings().iter().cloned().map(Some).collect(),
            arcs,
            anchors: vec![],
        }
    }

    pub fn add_crossing(&mut self, quadrant_sign_0: Sign) -> [usize; 4] {
        let c = self.crossings.len();
        let first = self.darts.len();
        let ids = [first, first + 1, first + 2, first + 3];
        for slot in 0..4 {
            self.darts.push(Some(Dart { crossing: c, slot }));
        }
        self.crossings
            .push(Some(Crossing::new(ids, quadrant_sign_0)));
        ids
    }

    pub fn remove_crossing(&mut self, c: usize) {
        if let Some(x) = self.crossings[c].take() {
            for d in x.darts {
                self.darts[d] = None;
            }
        }
    }

    fn find(&self, f: impl Fn(&WireArc) -> bool) -> Option<usize> {
        self.arcs.iter().position(|a| a.as_ref().is_some_and(&f))
    }

    /// Removes and returns the arc ending at `dart` (as tail or head).
    pub fn take_at(&mut self, dart: usize) -> Option<WireArc> {
        let i = self.find(|a| a.tail == dart || a.head == dart)?;
        self.arcs[i].take()
    }

    pub fn push(&mut self, tail: usize, head: usize, origin: Vec<usize>) {
        self.arcs.push(Some(WireArc { tail, head, origin }));
    }

    pub fn anchor(&mut self, old_face: usize, dart: usize) {
        self.anchors.push((old_face, dart));
    }

    /// Compacts identifiers, recomputes components and faces, and matches new faces to
    /// old ones through arcs that persist. `outer_pick` chooses which piece stays unbounded
    /// when the move splits the old outer face.
    pub fn finish(self, outer_pick: usize) -> Result<Rebuilt, MoveError> {
        let old = self.old;
        let mut dmap = vec![usize::MAX; self.darts.len()];
        let mut darts = vec![];
        let mut cmap = vec![usize::MAX; self.crossings.len()];
        let mut nc = 0;
        for (i, c) in self.crossings.iter().enumerate() {
            if c.is_some() {
                cmap[i] = nc;
                nc += 1;
            }
        }
        if nc == 0 {
            return Err(MoveError::Invalid("move leaves no crossing".into()));
        }
        for (i, d) in self.darts.iter().enumerate() {
            if let Some(d) = d {
                dmap[i] = darts.len();
                darts.push(Dart {
                    crossing: cmap[d.crossing],
                    slot: d.slot,
                });
            }
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .flatten()
            .map(|c| Crossing {
                darts: c.darts.map(|d| dmap[d]),
                quadrant_signs: c.quadrant_signs,
            })
            .collect();
        let mut wires: Vec<WireArc> = self
            .arcs
            .into_iter()
            .flatten()
            .map(|a| WireArc {
                tail: dmap[a.tail],
                head: dmap[a.head],
                origin: a.origin,
            })
            .collect();
        if wires
            .iter()
            .any(|a| a.tail == usize::MAX || a.head == usize::MAX)
        {
            return Err(MoveError::Invalid(
                "arc left dangling at a removed crossing".into(),
            ));
        }
        wires.sort_by_key(|a| a.tail);

        let nd = darts.len();
        let mut partner = vec![usize::MAX; nd];
        let mut tail_arc = vec![usize::MAX; nd];
        for (i, a) in wires.iter().enumerate() {
            if partner[a.tail] != usize::MAX || partner[a.head] != usize::MAX {
                return Err(MoveError::Invalid("dart used by two arcs".into()));
            }
            partner[a.tail] = a.head;
            partner[a.head] = a.tail;
            tail_arc[a.tail] = i;
        }
        if partner.contains(&usize::MAX) {
            return Err(MoveError::Invalid("dart without an arc".into()));
        }
        for a in &wires {
            let (h, t) = (darts[a.head], darts[a.tail]);
            if tail_arc[crossings[h.crossing].darts[(h.slot + 2) % 4]] == usize::MAX
                || tail_arc[crossings[t.crossing].darts[(t.slot + 2) % 4]] != usize::MAX
            {
                return Err(MoveError::Invalid(
                    "strand orientation broken at a crossing".into(),
                ));
            }
        }

        // components in order of their lowest arc
        let mut component = vec![usize::MAX; wires.len()];
        let mut components = 0;
        for start in 0..wires.len() {
            if component[start] != usize::MAX {
                continue;
            }
            let mut a = start;
            while component[a] == usize::MAX {
                component[a] = components;
                let h = darts[wires[a].head];
                a = tail_arc[crossings[h.crossing].darts[(h.slot + 2) % 4]];
            }
            components += 1;
        }

        let orbits = face_orbits(&darts, &crossings, &partner);
        let mut face_of = vec![0; nd];
        for (f, orbit) in orbits.iter().enumerate() {
            for &d in orbit {
                face_of[d] = f;
            }
        }

        let mut forward: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let mut backward: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let mut link = |o: usize, n: usize| {
            forward.entry(o).or_default().insert(n);
            backward.entry(n).or_default().insert(o);
        };
        for a in &wires {
            for &o in &a.origin {
                link(old.arc_left(o), face_of[a.tail]);
                link(old.arc_right(o), face_of[a.head]);
            }
        }
        for &(o, d) in &self.anchors {
            if dmap[d] != usize::MAX {
                link(o, face_of[dmap[d]]);
            }
        }

        let outer_candidates: Vec<usize> = forward
            .get(&old.outer_face())
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        let outer = match outer_candidates.len() {
            0 => return Err(MoveError::Invalid("cannot place the unbounded face".into())),
            1 if outer_pick == 0 => outer_candidates[0],
            1 => {
                return Err(MoveError::Shape(
                    "outer face is not split at this site".into(),
                ))
            }
            _ => *outer_candidates
                .get(outer_pick)
                .ok_or_else(|| MoveError::Shape("no such piece of the outer face".into()))?,
        };

        let survivor_of = (0..orbits.len())
            .map(|n| {
                if n == outer {
                    return None;
                }
                let olds = backward.get(&n)?;
                let o = *olds.iter().next()?;
                let single = olds.len() == 1 && forward[&o].len() == 1 && o != old.outer_face();
                single.then_some(o)
            })
            .collect();

        let parts = DiagramParts {
            components,
            darts,
            crossings,
            arcs: wires
                .iter()
                .zip(&component)
                .map(|(a, &c)| Arc {
                    tail: Some(a.tail),
                    head: Some(a.head),
                    component: c,
                    loop_faces: None,
                })
                .collect(),
            faces: orbits
                .into_iter()
                .map(|boundary| Face {
                    boundary,
                    area: None,
                })
                .collect(),
            outer_face: outer,
            layout: None,
        };
        Ok(Rebuilt { parts, survivor_of })
    }
}

/// A one-component crossingless diagram whose inside continues `inner` and whose curve
/// runs anticlockwise when `anticlockwise`.
pub(crate) fn circle(inner: usize, anticlockwise: bool) -> Rebuilt {
    let loop_faces = if anticlockwise { (1, 0) } else { (0, 1) };
    Rebuilt {
        parts: DiagramParts {
            components: 1,
            darts: vec![],
            crossings: vec![],
            arcs: vec![Arc {
                tail: None,
                head: None,
                component: 0,
                loop_faces: Some(loop_faces),
            }],
            faces: vec![
                Face {
                    boundary: vec![],
                    area: None,
                },
                Face {
                    boundary: vec![],
                    area: None,
                },
            ],
            outer_face: 0,
            layout: None,
        },
        survivor_of: vec![None, Some(inner)],
    }
}

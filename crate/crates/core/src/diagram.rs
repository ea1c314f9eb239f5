use std::collections::VecDeque;
use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::rational::{to_short, Q};
use num::Signed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// `self` times `(-1)^k`.
    pub fn alternate(self, k: usize) -> Sign {
        if k.is_multiple_of(2) {
            self
        } else {
            -self
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Serialized as the integer `+1` or `-1`.
impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Sign, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub crossing: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Darts in counterclockwise order; `darts[k]` sits at slot `k`.
    pub darts: [usize; 4],
    /// Sign of quadrant `k` (between slot `k` and slot `k+1`). Valid input alternates.
    pub quadrant_signs: [Sign; 4],
}

impl Crossing {
    pub fn new(darts: [usize; 4], quadrant_sign_0: Sign) -> Crossing {
        Crossing {
            darts,
            quadrant_signs: [0, 1, 2, 3].map(|k| quadrant_sign_0.alternate(k)),
        }
    }

    pub fn quadrant_sign_0(&self) -> Sign {
        self.quadrant_signs[0]
    }
}

/// An arc between two crossings, or a closed crossingless loop when both ends are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: Option<usize>,
    pub head: Option<usize>,
    pub component: usize,
    /// Only for closed loops: faces to the left and right of the loop.
    pub loop_faces: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Darts of the face orbit; a dart stands for the corner (quadrant) at its slot.
    pub boundary: Vec<usize>,
    pub area: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Point {
        Point { x, y }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num::ToPrimitive;
        (
            self.x.to_f64().unwrap_or(0.0),
            self.y.to_f64().unwrap_or(0.0),
        )
    }
}

/// Rendering hints: crossing positions and interior waypoints of each arc.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Layout {
    pub crossings: Vec<Point>,
    pub arcs: Vec<Vec<Point>>,
}

/// Raw diagram data as decoded, possibly invalid.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiagramParts {
    pub components: usize,
    pub darts: Vec<Dart>,
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<Arc>,
    pub faces: Vec<Face>,
    pub outer_face: usize,
    pub layout: Option<Layout>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, code: &'static str, message: impl Into<String>) {
        self.violations.push(Violation {
            code,
            message: message.into(),
        });
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.code, v.message)?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// A validated enriched knot diagram with derived incidence data.
#[derive(Clone, Debug)]
pub struct EnrichedKnotDiagram {
    parts: DiagramParts,
    arc_of_dart: Vec<usize>,
    face_of_dart: Vec<usize>,
    arc_left: Vec<usize>,
    arc_right: Vec<usize>,
    winding: Vec<i64>,
}

impl PartialEq for EnrichedKnotDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl EnrichedKnotDiagram {
    pub fn new(parts: DiagramParts) -> Result<EnrichedKnotDiagram, ValidationReport> {
        let mut report = ValidationReport::default();
        let derived = check(&parts, &mut report);
        match derived {
            Some(d) if report.is_valid() => Ok(EnrichedKnotDiagram {
                parts,
                arc_of_dart: d.arc_of_dart,
                face_of_dart: d.face_of_dart,
                arc_left: d.arc_left,
                arc_right: d.arc_right,
                winding: d.winding,
            }),
            _ => Err(report),
        }
    }

    /// The diagram with no curve at all.
    pub fn empty() -> EnrichedKnotDiagram {
        EnrichedKnotDiagram::new(DiagramParts {
            components: 0,
            faces: vec![Face {
                boundary: vec![],
                area: None,
            }],
            outer_face: 0,
            layout: Some(Layout::default()),
            ..DiagramParts::default()
        })
        .expect("empty diagram is valid")
    }

    pub fn parts(&self) -> &DiagramParts {
        &self.parts
    }

    pub fn into_parts(self) -> DiagramParts {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.components == 0
    }

    pub fn component_count(&self) -> usize {
        self.parts.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.parts.crossings
    }

    pub fn darts(&self) -> &[Dart] {
        &self.parts.darts
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.parts.arcs
    }

    pub fn faces(&self) -> &[Face] {
        &self.parts.faces
    }

    pub fn outer_face(&self) -> usize {
        self.parts.outer_face
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.parts.layout.as_ref()
    }

    pub fn area(&self, face: usize) -> Option<&Q> {
        self.parts.faces[face].area.as_ref()
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = usize> + '_ {
        let outer = self.parts.outer_face;
        (0..self.parts.faces.len()).filter(move |&f| f != outer)
    }

    pub fn winding(&self, face: usize) -> i64 {
        self.winding[face]
    }

    pub fn windings(&self) -> &[i64] {
        &self.winding
    }

    pub fn arc_of_dart(&self, dart: usize) -> usize {
        self.arc_of_dart[dart]
    }

    pub fn face_of_dart(&self, dart: usize) -> usize {
        self.face_of_dart[dart]
    }

    /// Face to the left of the arc (relative to its direction).
    pub fn arc_left(&self, arc: usize) -> usize {
        self.arc_left[arc]
    }

    pub fn arc_right(&self, arc: usize) -> usize {
        self.arc_right[arc]
    }

    pub fn dart_at(&self, crossing: usize, slot: usize) -> usize {
        self.parts.crossings[crossing].darts[slot % 4]
    }

    pub fn quadrant_sign(&self, crossing: usize, quadrant: usize) -> Sign {
        self.parts.crossings[crossing].quadrant_signs[quadrant % 4]
    }

    pub fn quadrant_face(&self, crossing: usize, quadrant: usize) -> usize {
        self.face_of_dart[self.dart_at(crossing, quadrant)]
    }

    /// Other endpoint of the arc through `dart`.
    pub fn partner(&self, dart: usize) -> usize {
        let a = &self.parts.arcs[self.arc_of_dart[dart]];
        if a.tail == Some(dart) {
            a.head.expect("arc with one end")
        } else {
            a.tail.expect("arc with one end")
        }
    }

    pub fn is_tail(&self, dart: usize) -> bool {
        self.parts.arcs[self.arc_of_dart[dart]].tail == Some(dart)
    }

    /// Slot (0 or 1) of the strand that passes over at the crossing.
    ///
    /// Walking anticlockwise around a `+` quadrant, the incoming boundary strand is over.
    /// Quadrant `k` is entered along slot `k+1`, so a `+` quadrant 0 puts the slot-1 strand on top.
    pub fn over_strand(&self, crossing: usize) -> usize {
        match self.parts.crossings[crossing].quadrant_signs[0] {
            Sign::Plus => 1,
            Sign::Minus => 0,
        }
    }

    /// Slot at which the strand `strand` (0 or 1) leaves the crossing.
    pub fn out_slot(&self, crossing: usize, strand: usize) -> usize {
        let d = self.dart_at(crossing, strand);
        if self.is_tail(d) {
            strand
        } else {
            strand + 2
        }
    }

    /// Standard crossing sign (right-handed = +1) using component orientations.
    pub fn crossing_sign(&self, crossing: usize) -> i64 {
        let over = self.over_strand(crossing);
        let o = self.out_slot(crossing, over);
        let u = self.out_slot(crossing, 1 - over);
        if u == (o + 1) % 4 {
            1
        } else {
            -1
        }
    }

    pub fn component_of_crossing_strand(&self, crossing: usize, strand: usize) -> usize {
        self.parts.arcs[self.arc_of_dart[self.dart_at(crossing, strand)]].component
    }

    /// Arc that continues the strand after `arc` passes through its head crossing.
    pub fn next_arc(&self, arc: usize) -> usize {
        match self.parts.arcs[arc].head {
            None => arc,
            Some(h) => {
                let d = &self.parts.darts[h];
                let out = self.dart_at(d.crossing, d.slot + 2);
                self.arc_of_dart[out]
            }
        }
    }

    /// Arcs of a component in traversal order, starting from its lowest-numbered arc.
    pub fn component_arcs(&self, component: usize) -> Vec<usize> {
        let start = match self
            .parts
            .arcs
            .iter()
            .position(|a| a.component == component)
        {
            Some(s) => s,
            None => return vec![],
        };
        let mut out = vec![start];
        let mut a = self.next_arc(start);
        while a != start {
            out.push(a);
            a = self.next_arc(a);
        }
        out
    }

    /// Corner count of a face (number of darts in its orbit).
    pub fn corner_count(&self, face: usize) -> usize {
        self.parts.faces[face].boundary.len()
    }

    /// Signs of all corners of a face, in boundary order.
    pub fn face_corner_signs(&self, face: usize) -> Vec<Sign> {
        self.parts.faces[face]
            .boundary
            .iter()
            .map(|&d| {
                let dd = self.parts.darts[d];
                self.quadrant_sign(dd.crossing, dd.slot)
            })
            .collect()
    }

    /// Copy with new face areas (outer face keeps `None`).
    pub fn with_areas(&self, areas: &[Option<Q>]) -> Result<EnrichedKnotDiagram, ValidationReport> {
        let mut parts = self.parts.clone();
        for (f, a) in parts.faces.iter_mut().zip(areas) {
            f.area = a.clone();
        }
        EnrichedKnotDiagram::new(parts)
    }

    /// Copy with every quadrant sign negated.
    pub fn with_signs_negated(&self) -> EnrichedKnotDiagram {
        let mut parts = self.parts.clone();
        for c in &mut parts.crossings {
            c.quadrant_signs = c.quadrant_signs.map(|s| -s);
        }
        EnrichedKnotDiagram::new(parts).expect("negating signs keeps validity")
    }

    /// Copy with the orientation of every component reversed.
    pub fn reversed(&self) -> EnrichedKnotDiagram {
        let mut parts = self.parts.clone();
        for a in &mut parts.arcs {
            std::mem::swap(&mut a.tail, &mut a.head);
            if let Some((l, r)) = a.loop_faces {
                a.loop_faces = Some((r, l));
            }
        }
        if let Some(layout) = &mut parts.layout {
            for w in &mut layout.arcs {
                w.reverse();
            }
        }
        EnrichedKnotDiagram::new(parts).expect("reversal keeps validity")
    }
}

struct Derived {
    arc_of_dart: Vec<usize>,
    face_of_dart: Vec<usize>,
    arc_left: Vec<usize>,
    arc_right: Vec<usize>,
    winding: Vec<i64>,
}

/// Lists every violated invariant; empty iff the diagram is well formed.
pub fn validate(parts: &DiagramParts) -> ValidationReport {
    let mut report = ValidationReport::default();
    check(parts, &mut report);
    report
}

fn check(p: &DiagramParts, r: &mut ValidationReport) -> Option<Derived> {
    let nd = p.darts.len();
    let nc = p.crossings.len();
    let na = p.arcs.len();
    let nf = p.faces.len();

    if nf == 0 {
        r.push("faces", "diagram has no faces");
        return None;
    }
    if p.outer_face >= nf {
        r.push(
            "outer-face",
            format!("outer face {} does not exist", p.outer_face),
        );
        return None;
    }
    for (i, f) in p.faces.iter().enumerate() {
        match &f.area {
            None if i != p.outer_face => r.push(
                "outer-face",
                format!("face {i} has no area but is not the designated outer face"),
            ),
            Some(_) if i == p.outer_face => r.push(
                "outer-face",
                format!("outer face {i} must not carry an area"),
            ),
            Some(a) if !a.is_positive() => r.push(
                "area-positive",
                format!(
                    "face {i} area {} is not among the positive rationals",
                    to_short(a)
                ),
            ),
            _ => {}
        }
    }
    for a in &p.arcs {
        if a.component >= p.components {
            r.push(
                "component",
                format!("arc refers to missing component {}", a.component),
            );
        }
    }
    for c in 0..p.components {
        if !p.arcs.iter().any(|a| a.component == c) {
            r.push("component", format!("component {c} has no arcs"));
        }
    }
    if !r.is_valid() {
        return None;
    }

    if nc == 0 {
        return check_crossingless(p, r);
    }
    if nd != 4 * nc {
        r.push(
            "darts",
            format!("{nd} darts for {nc} crossings (expected {})", 4 * nc),
        );
    }
    for (ci, c) in p.crossings.iter().enumerate() {
        for (slot, &d) in c.darts.iter().enumerate() {
            if d >= nd {
                r.push("darts", format!("crossing {ci} refers to missing dart {d}"));
            } else if p.darts[d].crossing != ci || p.darts[d].slot != slot {
                r.push(
                    "darts",
                    format!("dart {d} is listed at crossing {ci} slot {slot} but records crossing {} slot {}", p.darts[d].crossing, p.darts[d].slot),
                );
            }
        }
        for k in 0..4 {
            if c.quadrant_signs[k] == c.quadrant_signs[(k + 1) % 4] {
                r.push(
                    "sign-alternation",
                    format!("sign alternation violated at crossing {ci}: quadrants {k} and {} are adjacent with equal signs", (k + 1) % 4),
                );
                break;
            }
        }
    }
    for (di, d) in p.darts.iter().enumerate() {
        if d.crossing >= nc || d.slot > 3 {
            r.push("darts", format!("dart {di} has out-of-range crossing/slot"));
        }
    }
    if !r.is_valid() {
        return None;
    }

    let mut arc_of_dart = vec![usize::MAX; nd];
    for (ai, a) in p.arcs.iter().enumerate() {
        match (a.tail, a.head) {
            (Some(t), Some(h)) => {
                if t == h {
                    r.push("arc", format!("arc {ai} has tail equal to head"));
                }
                for d in [t, h] {
                    if d >= nd {
                        r.push("arc", format!("arc {ai} refers to missing dart {d}"));
                    } else if arc_of_dart[d] != usize::MAX {
                        r.push(
                            "arc",
                            format!("dart {d} is an endpoint of more than one arc"),
                        );
                    } else {
                        arc_of_dart[d] = ai;
                    }
                }
            }
            _ => r.push(
                "arc",
                format!("arc {ai} is a closed loop but the diagram has crossings"),
            ),
        }
    }
    for (d, &a) in arc_of_dart.iter().enumerate() {
        if a == usize::MAX {
            r.push("arc", format!("dart {d} is not an arc endpoint"));
        }
    }
    if !r.is_valid() {
        return None;
    }
    let is_tail = |d: usize| p.arcs[arc_of_dart[d]].tail == Some(d);
    for (ci, c) in p.crossings.iter().enumerate() {
        for s in 0..2 {
            let (d0, d2) = (c.darts[s], c.darts[s + 2]);
            if is_tail(d0) == is_tail(d2) {
                r.push(
                    "strand-pairing",
                    format!("crossing {ci}: slots {s} and {} must pair one incoming with one outgoing end", s + 2),
                );
            }
            if p.arcs[arc_of_dart[d0]].component != p.arcs[arc_of_dart[d2]].component {
                r.push(
                    "strand-pairing",
                    format!(
                        "crossing {ci}: slots {s} and {} belong to different components",
                        s + 2
                    ),
                );
            }
        }
    }
    if !r.is_valid() {
        return None;
    }

    // Each component must be a single closed strand.
    let next_arc = |a: usize| -> usize {
        let h = p.arcs[a].head.unwrap();
        let d = p.darts[h];
        arc_of_dart[p.crossings[d.crossing].darts[(d.slot + 2) % 4]]
    };
    let mut seen = vec![false; na];
    for c in 0..p.components {
        let start = p.arcs.iter().position(|a| a.component == c).unwrap();
        let mut a = start;
        loop {
            seen[a] = true;
            a = next_arc(a);
            if a == start {
                break;
            }
            if seen[a] {
                r.push(
                    "component",
                    format!("component {c} does not close up into one strand"),
                );
                break;
            }
        }
        let total = p.arcs.iter().filter(|a| a.component == c).count();
        let visited = (0..na)
            .filter(|&i| seen[i] && p.arcs[i].component == c)
            .count();
        if visited != total {
            r.push(
                "component",
                format!("component {c} splits into several closed strands"),
            );
        }
    }
    if !r.is_valid() {
        return None;
    }

    // Faces must be exactly the orbits of phi(d) = cw_next(partner(d)).
    let partner = |d: usize| -> usize {
        let a = &p.arcs[arc_of_dart[d]];
        if a.tail == Some(d) {
            a.head.unwrap()
        } else {
            a.tail.unwrap()
        }
    };
    let phi = |d: usize| -> usize {
        let e = p.darts[partner(d)];
        p.crossings[e.crossing].darts[(e.slot + 3) % 4]
    };
    let mut face_of_dart = vec![usize::MAX; nd];
    for (fi, f) in p.faces.iter().enumerate() {
        if f.boundary.is_empty() {
            r.push("face-orbit", format!("face {fi} has an empty boundary"));
            continue;
        }
        for (i, &d) in f.boundary.iter().enumerate() {
            if d >= nd {
                r.push(
                    "face-orbit",
                    format!("face {fi} refers to missing dart {d}"),
                );
                continue;
            }
            if face_of_dart[d] != usize::MAX {
                r.push(
                    "face-orbit",
                    format!("dart {d} appears in more than one face"),
                );
            }
            face_of_dart[d] = fi;
            let next = f.boundary[(i + 1) % f.boundary.len()];
            if phi(d) != next {
                r.push(
                    "face-orbit",
                    format!("face {fi} boundary is not a face orbit: dart {d} is followed by {next}, expected {}", phi(d)),
                );
            }
        }
    }
    for (d, &f) in face_of_dart.iter().enumerate() {
        if f == usize::MAX {
            r.push("face-orbit", format!("dart {d} belongs to no face"));
        }
    }
    if !r.is_valid() {
        return None;
    }

    let euler = nc as i64 - na as i64 + nf as i64;
    if euler != 2 {
        r.push(
            "euler",
            format!("Euler formula violated: V - E + F = {nc} - {na} + {nf} = {euler}, expected 2"),
        );
        return None;
    }

    let mut arc_left = vec![0; na];
    let mut arc_right = vec![0; na];
    for (ai, a) in p.arcs.iter().enumerate() {
        arc_left[ai] = face_of_dart[a.tail.unwrap()];
        arc_right[ai] = face_of_dart[a.head.unwrap()];
    }
    let winding = windings_from(nf, p.outer_face, &arc_left, &arc_right, r)?;
    Some(Derived {
        arc_of_dart,
        face_of_dart,
        arc_left,
        arc_right,
        winding,
    })
}

fn check_crossingless(p: &DiagramParts, r: &mut ValidationReport) -> Option<Derived> {
    if !p.darts.is_empty() {
        r.push("darts", "darts present without crossings");
        return None;
    }
    match p.components {
        0 => {
            if !p.arcs.is_empty() || p.faces.len() != 1 {
                r.push("empty", "an empty diagram has no arcs and exactly one face");
                return None;
            }
            Some(Derived {
                arc_of_dart: vec![],
                face_of_dart: vec![],
                arc_left: vec![],
                arc_right: vec![],
                winding: vec![0],
            })
        }
        1 => {
            if p.arcs.len() != 1 || p.faces.len() != 2 {
                r.push(
                    "euler",
                    "a crossingless knot is one closed arc separating two faces",
                );
                return None;
            }
            let a = &p.arcs[0];
            let (l, rt) = match (a.tail, a.head, a.loop_faces) {
                (None, None, Some(lr)) => lr,
                _ => {
                    r.push(
                        "arc",
                        "a crossingless arc must be a closed loop with left and right faces",
                    );
                    return None;
                }
            };
            if l > 1 || rt > 1 || l == rt {
                r.push("arc", "loop faces must be the two distinct faces");
                return None;
            }
            if p.faces.iter().any(|f| !f.boundary.is_empty()) {
                r.push(
                    "face-orbit",
                    "faces of a crossingless diagram have no darts",
                );
                return None;
            }
            let winding = windings_from(2, p.outer_face, &[l], &[rt], r)?;
            Some(Derived {
                arc_of_dart: vec![],
                face_of_dart: vec![],
                arc_left: vec![l],
                arc_right: vec![rt],
                winding,
            })
        }
        _ => {
            r.push(
                "split",
                "split diagrams (several pieces without crossings between them) are not supported",
            );
            None
        }
    }
}

/// Alexander numbering: outer face 0, crossing an arc from right to left adds 1.
fn windings_from(
    nf: usize,
    outer: usize,
    left: &[usize],
    right: &[usize],
    r: &mut ValidationReport,
) -> Option<Vec<i64>> {
    let mut adj: Vec<Vec<(usize, i64)>> = vec![vec![]; nf];
    for (a, (&l, &rt)) in left.iter().zip(right).enumerate() {
        let _ = a;
        adj[rt].push((l, 1));
        adj[l].push((rt, -1));
    }
    let mut w = vec![i64::MIN; nf];
    w[outer] = 0;
    let mut queue = VecDeque::from([outer]);
    while let Some(f) = queue.pop_front() {
        for &(g, step) in &adj[f] {
            if w[g] == i64::MIN {
                w[g] = w[f] + step;
                queue.push_back(g);
            }
        }
    }
    if w.contains(&i64::MIN) {
        r.push("connected", "face adjacency is disconnected");
        return None;
    }
    for (&l, &rt) in left.iter().zip(right) {
        if w[l] != w[rt] + 1 {
            r.push(
                "winding-cocycle",
                format!(
                    "winding numbers are inconsistent across an arc between faces {rt} and {l}"
                ),
            );
            return None;
        }
    }
    Some(w)
}

/// Face orbits of phi for a dart-level wiring; used by builders and move surgery.
pub(crate) fn face_orbits(
    darts: &[Dart],
    crossings: &[Crossing],
    partner: &[usize],
) -> Vec<Vec<usize>> {
    let nd = darts.len();
    let mut seen = vec![false; nd];
    let mut orbits = vec![];
    for start in 0..nd {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![];
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            orbit.push(d);
            let e = darts[partner[d]];
            d = crossings[e.crossing].darts[(e.slot + 3) % 4];
        }
        orbits.push(orbit);
    }
    orbits
}

//! Enriched knot diagrams: planar knot shadows with signed corners and face areas,
//! their disk analysis, the area obstruction and the planar move calculus.

pub mod builders;
pub mod canonical;
pub mod diagram;
pub mod disks;
pub mod invariants;
pub mod io;
pub mod moves;
pub mod obstruction;
pub mod planar;
pub mod rational;
pub mod svg;
pub mod table;

pub use builders::{build, parse_family, BuildError, FamilySpec};
pub use canonical::{are_equivalent, canonical_form, CanonicalForm};
pub use diagram::{
    validate, Arc, Crossing, Dart, DiagramParts, EnrichedKnotDiagram, Face, Layout, Point, Sign,
    ValidationReport, Violation,
};
pub use disks::{enumerate_disks, BoundDisk, DiskOptions, Side};
pub use invariants::{legendrian_representable, rotation_numbers, summarize, writhe};
pub use io::{parse, serialize, IoError};
pub use moves::{
    applicable_moves, apply_move, replay, search_undercut, MoveInstance, MoveKind, MoveTrace,
    SearchOutcome,
};
pub use obstruction::{check_obstruction, DiagramPair, EqualityPolicy, Verdict, VerdictResult};
pub use planar::{planarize, PlanarError, Planarized};
pub use rational::{parse_q, q, qf, to_pq, to_short, Q};

//! Breadth-first search for move chains, and trace replay.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{canonical_form, face_matchings, shape_form, CanonicalForm};
use crate::diagram::EnrichedKnotDiagram;
use crate::obstruction::{preconditions, DiagramPair};

use super::{apply_move, successors, FaceDelta, MoveError, MoveInstance, MoveKind, Site};

/// A chain of moves leading from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub start: CanonicalForm,
    pub end: CanonicalForm,
    pub depth: usize,
    pub steps: Vec<MoveInstance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchOutcome {
    Found {
        trace: MoveTrace,
    },
    /// Nothing within the depth bound. Not a proof that no chain exists.
    NotFound {
        reason: String,
        explored: usize,
    },
    /// The state budget ran out before the depth bound was exhausted.
    BudgetExhausted {
        explored: usize,
        depth: usize,
    },
}

impl SearchOutcome {
    pub fn trace(&self) -> Option<&MoveTrace> {
        match self {
            SearchOutcome::Found { trace } => Some(trace),
            _ => None,
        }
    }
}

/// One R0 step taking `from` exactly onto `to`, if some isomorphism of the two maps
/// makes the area deltas admissible.
pub fn r0_onto(from: &EnrichedKnotDiagram, to: &EnrichedKnotDiagram) -> Option<MoveInstance> {
    let goal = canonical_form(to);
    face_matchings(from, to).into_iter().find_map(|m| {
        let inst = MoveInstance {
            kind: MoveKind::R0,
            site: Site::Whole,
            epsilons: from
                .bounded_faces()
                .map(|f| FaceDelta {
                    face: f,
                    epsilon: to.area(m[f]).expect("bounded") - from.area(f).expect("bounded"),
                })
                .collect(),
            created: vec![],
        };
        let out = apply_move(from, &inst).ok()?;
        (canonical_form(&out) == goal).then_some(inst)
    })
}

/// Breadth-first search for a chain of at most `max_depth` moves from `d1` to `d2`,
/// visiting at most `budget` generated states. Combinatorial moves use default
/// parameters; at every state whose map matches the goal's, a single R0 step onto the
/// goal's exact areas is tried. The empty chain is never a witness: undercutting is
/// strict, so `(d, d)` is found only through a real loop of moves.
pub fn search_undercut(
    d1: &EnrichedKnotDiagram,
    d2: &EnrichedKnotDiagram,
    max_depth: usize,
    budget: usize,
) -> SearchOutcome {
    let start = canonical_form(d1);
    let goal = canonical_form(d2);
    let found = |steps: Vec<MoveInstance>| SearchOutcome::Found {
        trace: MoveTrace {
            start: start.clone(),
            end: goal.clone(),
            depth: steps.len(),
            steps,
        },
    };
    let pre = preconditions(&DiagramPair::new(d1.clone(), d2.clone()));
    if !pre.all_pass() {
        return SearchOutcome::NotFound {
            reason: format!("topological precondition: {}", pre.failures().join("; ")),
            explored: 0,
        };
    }
    let goal_shape = shape_form(d2);
    let mut seen: HashSet<CanonicalForm> = HashSet::from([start.clone()]);
    if max_depth == 0 {
        return SearchOutcome::NotFound {
            reason: "depth bound 0 admits only the empty chain".into(),
            explored: 0,
        };
    }
    let mut frontier: Vec<(EnrichedKnotDiagram, Vec<MoveInstance>)> = vec![(d1.clone(), vec![])];
    let mut explored = 0;
    for level in 0..=max_depth {
        if level < max_depth {
            for (s, steps) in &frontier {
                if shape_form(s) == goal_shape {
                    if let Some(m) = r0_onto(s, d2) {
                        let mut steps = steps.clone();
                        steps.push(m);
                        return found(steps);
                    }
                }
            }
        }
        if level == max_depth {
            break;
        }
        let mut next = vec![];
        for (s, steps) in &frontier {
            for (m, t) in successors(s) {
                explored += 1;
                if explored > budget {
                    return SearchOutcome::BudgetExhausted {
                        explored: explored - 1,
                        depth: level + 1,
                    };
                }
                let cf = canonical_form(&t);
                let mut path = steps.clone();
                path.push(m);
                if cf == goal {
                    return found(path);
                }
                if seen.insert(cf) {
                    next.push((t, path));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    SearchOutcome::NotFound {
        reason: format!("no chain of at most {max_depth} moves found"),
        explored,
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("trace starts at {expected} but the diagram is {actual}")]
    StartMismatch {
        expected: CanonicalForm,
        actual: CanonicalForm,
    },
    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: MoveError,
    },
    #[error("replay ends at {actual}, trace claims {expected}")]
    EndMismatch {
        expected: CanonicalForm,
        actual: CanonicalForm,
    },
}

/// Applies every step of `trace` to `d`, checking both ends against the trace.
pub fn replay(
    d: &EnrichedKnotDiagram,
    trace: &MoveTrace,
) -> Result<EnrichedKnotDiagram, ReplayError> {
    let actual = canonical_form(d);
    if actual != trace.start {
        return Err(ReplayError::StartMismatch {
            expected: trace.start.clone(),
            actual,
        });
    }
    let mut cur = d.clone();
    for (index, m) in trace.steps.iter().enumerate() {
        cur = apply_move(&cur, m).map_err(|source| ReplayError::Step { index, source })?;
    }
    let actual = canonical_form(&cur);
    if actual != trace.end {
        return Err(ReplayError::EndMismatch {
            expected: trace.end.clone(),
            actual,
        });
    }
    Ok(cur)
}

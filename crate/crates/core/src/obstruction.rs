//! Deciding the big/little disk obstruction for an ordered diagram pair.

use std::fmt;

use serde::Serialize;

use crate::diagram::EnrichedKnotDiagram;
use crate::disks::{
    big_disks_among, little_disks_among, pair_disks, shares_all_corners, BoundDisk, LittleCase,
    Side,
};
use crate::invariants::{
    euler_reading, knot_area, rotation_numbers, total_signed_area, writhe, EulerReading, EulerSign,
};
use crate::rational::{to_short, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreconditionChecks {
    pub knot_area: bool,
    pub signed_area: bool,
    pub rotation: bool,
    pub euler: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairPreconditionReport {
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub area_lower: Q,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub area_upper: Q,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub signed_area_lower: Q,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub signed_area_upper: Q,
    pub writhe_lower: i64,
    pub writhe_upper: i64,
    pub rotation_lower: Vec<i64>,
    pub rotation_upper: Vec<i64>,
    /// `χ` under the configured convention.
    pub euler_characteristic: i64,
    pub euler: EulerReading,
    /// The same relation read with the opposite sign.
    pub euler_opposite: EulerReading,
    pub passes: PreconditionChecks,
}

impl PairPreconditionReport {
    pub fn all_pass(&self) -> bool {
        let p = &self.passes;
        p.knot_area && p.signed_area && p.rotation && p.euler
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = vec![];
        let p = &self.passes;
        if !p.knot_area {
            out.push(format!(
                "knot areas differ: a(lower) = {}, a(upper) = {}",
                to_short(&self.area_lower),
                to_short(&self.area_upper)
            ));
        }
        if !p.signed_area {
            out.push(format!(
                "signed areas differ: {} vs {}",
                to_short(&self.signed_area_lower),
                to_short(&self.signed_area_upper)
            ));
        }
        if !p.rotation {
            out.push(format!(
                "total rotation numbers differ: {:?} vs {:?}",
                self.rotation_lower, self.rotation_upper
            ));
        }
        if !p.euler {
            out.push(format!(
                "no surface has Euler characteristic {} or {} with the required boundary",
                self.euler.chi, self.euler_opposite.chi
            ));
        }
        out
    }
}

/// Ordered pair `(lower, upper)` with its topological data cached.
#[derive(Clone, Debug)]
pub struct DiagramPair {
    pub lower: EnrichedKnotDiagram,
    pub upper: EnrichedKnotDiagram,
    pub convention: EulerSign,
    pub cached: PairPreconditionReport,
}

impl DiagramPair {
    pub fn new(lower: EnrichedKnotDiagram, upper: EnrichedKnotDiagram) -> DiagramPair {
        DiagramPair::with_convention(lower, upper, EulerSign::default())
    }

    pub fn with_convention(
        lower: EnrichedKnotDiagram,
        upper: EnrichedKnotDiagram,
        convention: EulerSign,
    ) -> DiagramPair {
        let cached = compute_preconditions(&lower, &upper, convention);
        DiagramPair {
            lower,
            upper,
            convention,
            cached,
        }
    }

    pub fn boundary_components(&self) -> usize {
        self.lower.component_count() + self.upper.component_count()
    }

    /// Forced topology is a cylinder: `χ = 0` with two boundary knots.
    pub fn is_cylinder(&self) -> bool {
        self.cached.euler_characteristic == 0 && self.boundary_components() == 2
    }
}

pub fn preconditions(pair: &DiagramPair) -> PairPreconditionReport {
    pair.cached.clone()
}

fn compute_preconditions(
    lower: &EnrichedKnotDiagram,
    upper: &EnrichedKnotDiagram,
    s: EulerSign,
) -> PairPreconditionReport {
    let (wl, wu) = (writhe(lower), writhe(upper));
    let boundary = (lower.component_count() + upper.component_count()) as i64;
    let euler = euler_reading(wl, wu, boundary, s);
    let opposite = match s {
        EulerSign::Plus => EulerSign::Minus,
        EulerSign::Minus => EulerSign::Plus,
    };
    let euler_opposite = euler_reading(wl, wu, boundary, opposite);
    let mut rl = rotation_numbers(lower);
    let mut ru = rotation_numbers(upper);
    rl.sort_unstable();
    ru.sort_unstable();
    let (al, au) = (knot_area(lower), knot_area(upper));
    let (sl, su) = (total_signed_area(lower), total_signed_area(upper));
    PairPreconditionReport {
        passes: PreconditionChecks {
            knot_area: al == au,
            signed_area: sl == su,
            // components may merge, split, be born or die; only the total is invariant
            rotation: rl.iter().sum::<i64>() == ru.iter().sum::<i64>(),
            // the sign of the relation is unsettled, so only a surface that is
            // impossible under both readings fails the check
            euler: euler.feasible || euler_opposite.feasible,
        },
        area_lower: al,
        area_upper: au,
        signed_area_lower: sl,
        signed_area_upper: su,
        writhe_lower: wl,
        writhe_upper: wu,
        rotation_lower: rl,
        rotation_upper: ru,
        euler_characteristic: euler.chi,
        euler,
        euler_opposite,
    }
}

/// How equal-area little disks are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityPolicy {
    /// Any equal-area little disk sharing all corners counts as admissible.
    Conservative,
    /// As conservative, but on a forced cylinder a distinct equal-area disk on the same side
    /// is inadmissible (distinct lobes carry distinct relative classes).
    #[default]
    CylinderSharp,
}

impl fmt::Display for EqualityPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EqualityPolicy::Conservative => "conservative",
            EqualityPolicy::CylinderSharp => "cylinder-sharp",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictResult {
    Obstructed,
    NoObstructionFound,
}

impl fmt::Display for VerdictResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictResult::Obstructed => "OBSTRUCTED",
            VerdictResult::NoObstructionFound => "NO_OBSTRUCTION_FOUND",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LittleRecord {
    pub disk: BoundDisk,
    pub case: LittleCase,
    pub shares_all_corners: bool,
    /// Only meaningful for equal areas.
    pub equality_admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigDiskRecord {
    pub big: BoundDisk,
    pub little: Vec<LittleRecord>,
    #[serde(serialize_with = "crate::rational::ser_opt_q")]
    pub minimal_little_area: Option<Q>,
    pub equality: String,
    pub conclusion: String,
    pub obstructs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub result: VerdictResult,
    pub reasons: Vec<String>,
    pub preconditions: PairPreconditionReport,
    pub per_big_disk: Vec<BigDiskRecord>,
    pub caveats: Vec<String>,
    pub policy: EqualityPolicy,
    pub convention: EulerSign,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        self.result == VerdictResult::Obstructed
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.result)?;
        if self.result == VerdictResult::NoObstructionFound {
            writeln!(
                f,
                "  (the criterion does not rule the pair out; this is not a construction)"
            )?;
        }
        for r in &self.reasons {
            writeln!(f, "  - {r}")?;
        }
        for rec in &self.per_big_disk {
            writeln!(
                f,
                "  big {} area {}: {}",
                rec.big.label(),
                to_short(&rec.big.area),
                rec.conclusion
            )?;
            for l in &rec.little {
                writeln!(
                    f,
                    "    little {} area {} case {:?}{}",
                    l.disk.label(),
                    to_short(&l.disk.area),
                    l.case,
                    if l.disk.area == rec.big.area {
                        if l.equality_admissible {
                            " (equal, admissible)"
                        } else {
                            " (equal, inadmissible)"
                        }
                    } else {
                        ""
                    }
                )?;
            }
        }
        for c in &self.caveats {
            writeln!(f, "  caveat: {c}")?;
        }
        Ok(())
    }
}

fn equality_admissible(
    pair: &DiagramPair,
    policy: EqualityPolicy,
    a: &BoundDisk,
    b: &BoundDisk,
) -> bool {
    if !shares_all_corners(a, b) {
        return false;
    }
    match policy {
        EqualityPolicy::Conservative => true,
        EqualityPolicy::CylinderSharp => !(pair.is_cylinder() && a.side == b.side),
    }
}

pub const CAVEAT_MULTIPLICITY: &str =
    "multiplicity-1 search space: disks covering a face more than once are not enumerated";
pub const CAVEAT_CYLINDER_SHARP: &str =
    "cylinder-sharp equality rule applied: distinct same-side disks on a forced cylinder are taken to have distinct classes";

pub fn check_obstruction(pair: &DiagramPair, policy: EqualityPolicy) -> Verdict {
    let pre = pair.cached.clone();
    let mut caveats = vec![
        CAVEAT_MULTIPLICITY.to_string(),
        format!("equality policy: {policy}"),
        format!(
            "Euler sign convention s = {}1 (chi = s*(wr(lower) - wr(upper)))",
            if pair.convention == EulerSign::Plus {
                "+"
            } else {
                "-"
            }
        ),
    ];
    if !pre.all_pass() {
        let reasons = pre
            .failures()
            .into_iter()
            .map(|r| format!("topological precondition: {r}"))
            .collect();
        return Verdict {
            result: VerdictResult::Obstructed,
            reasons,
            preconditions: pre,
            per_big_disk: vec![],
            caveats,
            policy,
            convention: pair.convention,
        };
    }

    let disks = pair_disks(&pair.lower, &pair.upper);
    let bigs = big_disks_among(&disks, &pre.area_lower, &pre.area_upper);
    let mut records = vec![];
    let mut sharp_used = false;
    for big in bigs {
        let mut little = vec![];
        for (b, case) in little_disks_among(&disks, &big) {
            let admissible = equality_admissible(pair, policy, &big, &b);
            if b.area == big.area
                && policy == EqualityPolicy::CylinderSharp
                && pair.is_cylinder()
                && big.side == b.side
                && shares_all_corners(&big, &b)
            {
                sharp_used = true;
            }
            little.push(LittleRecord {
                shares_all_corners: shares_all_corners(&big, &b),
                equality_admissible: admissible,
                disk: b,
                case,
            });
        }
        little.sort_by_key(|l| l.disk.sort_key());
        let minimal = little.iter().map(|l| l.disk.area.clone()).min();
        let smaller = little.iter().any(|l| l.disk.area < big.area);
        let equal: Vec<&LittleRecord> = little.iter().filter(|l| l.disk.area == big.area).collect();
        let equal_ok = equal.iter().any(|l| l.equality_admissible);
        let equality = if equal.is_empty() {
            "no little disk of equal area".to_string()
        } else if equal_ok {
            format!(
                "{} equal-area little disk(s), at least one admissible",
                equal.len()
            )
        } else {
            format!(
                "{} equal-area little disk(s), none admissible (corners not all shared{})",
                equal.len(),
                if pair.is_cylinder() && policy == EqualityPolicy::CylinderSharp {
                    ", or distinct class on a forced cylinder"
                } else {
                    ""
                }
            )
        };
        let obstructs = !smaller && !equal_ok;
        let conclusion = if little.is_empty() {
            "no little disk at all".to_string()
        } else if smaller {
            "a smaller little disk exists".to_string()
        } else if equal_ok {
            "an admissible equal-area little disk exists".to_string()
        } else {
            "no admissible little disk".to_string()
        };
        records.push(BigDiskRecord {
            big,
            little,
            minimal_little_area: minimal,
            equality,
            conclusion,
            obstructs,
        });
    }
    if sharp_used {
        caveats.push(CAVEAT_CYLINDER_SHARP.to_string());
    }
    let mut reasons = vec![];
    let result = if records.iter().any(|r| r.obstructs) {
        for r in records.iter().filter(|r| r.obstructs) {
            reasons.push(format!(
                "big disk {} (area {}) has no admissible little disk",
                r.big.label(),
                to_short(&r.big.area)
            ));
        }
        VerdictResult::Obstructed
    } else {
        if records.is_empty() {
            reasons.push("criterion silent: the pair bounds no big disk".to_string());
        } else {
            reasons.push("every big disk has an admissible little disk".to_string());
        }
        VerdictResult::NoObstructionFound
    };
    Verdict {
        result,
        reasons,
        preconditions: pre,
        per_big_disk: records,
        caveats,
        policy,
        convention: pair.convention,
    }
}

pub fn batch_check(pairs: &[DiagramPair], policy: EqualityPolicy) -> Vec<Verdict> {
    pairs.iter().map(|p| check_obstruction(p, policy)).collect()
}

/// Big disks of a pair, for listing.
pub fn big_disks(pair: &DiagramPair) -> Vec<BoundDisk> {
    let disks = pair_disks(&pair.lower, &pair.upper);
    big_disks_among(&disks, &pair.cached.area_lower, &pair.cached.area_upper)
}

/// Little disks relative to `big`, which must be one of the pair's big disks.
pub fn little_disks(
    pair: &DiagramPair,
    big: &BoundDisk,
) -> Result<Vec<(BoundDisk, LittleCase)>, crate::disks::DiskError> {
    if !big_disks(pair).contains(big) {
        return Err(crate::disks::DiskError::NotBig(big.label()));
    }
    let disks = pair_disks(&pair.lower, &pair.upper);
    Ok(little_disks_among(&disks, big))
}

/// Side helper used by callers that list disks of a single diagram.
pub fn side_name(s: Side) -> &'static str {
    match s {
        Side::Single => "single",
        Side::Lower => "lower",
        Side::Upper => "upper",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{eight, unknot};
    use crate::rational::q;
    use crate::Sign;

    fn verdict(l: EnrichedKnotDiagram, u: EnrichedKnotDiagram) -> Verdict {
        check_obstruction(&DiagramPair::new(l, u), EqualityPolicy::CylinderSharp)
    }

    #[test]
    fn eights_grow() {
        let small = || eight(Sign::Plus, q(1)).unwrap();
        let large = || eight(Sign::Plus, q(2)).unwrap();
        assert!(!verdict(small(), large()).is_obstructed());
        assert!(verdict(large(), small()).is_obstructed());
        assert!(verdict(small(), small()).is_obstructed());
        let c = check_obstruction(
            &DiagramPair::new(small(), small()),
            EqualityPolicy::Conservative,
        );
        assert!(!c.is_obstructed());
    }

    #[test]
    fn unknots() {
        let v = verdict(unknot(q(1)).unwrap(), unknot(q(2)).unwrap());
        assert!(v.is_obstructed());
        assert!(!v.preconditions.passes.knot_area);
        let v = verdict(unknot(q(1)).unwrap(), unknot(q(1)).unwrap());
        assert!(v.preconditions.all_pass());
        assert_eq!(v.preconditions.euler_characteristic, 0);
        assert!(!v.is_obstructed());
    }

    #[test]
    fn eight_signs_compared() {
        let pair = DiagramPair::new(
            eight(Sign::Plus, q(1)).unwrap(),
            eight(Sign::Minus, q(1)).unwrap(),
        );
        let r = preconditions(&pair);
        assert_eq!((r.writhe_lower, r.writhe_upper), (1, -1));
        assert_eq!(r.euler_characteristic, 2);
        assert!(!r.euler.feasible);
        assert!(r.euler_opposite.feasible);
        assert!(r.passes.euler);
        let v = check_obstruction(&pair, EqualityPolicy::CylinderSharp);
        assert!(!v.is_obstructed());
        assert!(v.reasons[0].contains("criterion silent"));
    }
}

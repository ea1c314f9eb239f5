//! Diagram families: figure eights, trefoils, chains, E diagrams and the round unknot.

use num::Signed;
use thiserror::Error;

use crate::diagram::{EnrichedKnotDiagram, Sign};
use crate::planar::{planarize, Planarized};
use crate::rational::{q, to_short, Q};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("area parameter {0} must be positive")]
    NonPositiveArea(String),
    #[error("derived area {name} = {value} is not positive")]
    InfeasibleDerivedArea { name: &'static str, value: String },
    #[error("family {family} expects {expected}")]
    Arity {
        family: &'static str,
        expected: &'static str,
    },
    #[error("unknown family {0}")]
    UnknownFamily(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `8±(A)`: one crossing, two lobes of area `A`, lobe corners carry the sign.
    Eight { sign: Sign, area: Q },
    /// `T±`: standard trefoil shadow; center corners carry the sign.
    Trefoil {
        sign: Sign,
        lobes: [Q; 3],
        center: Q,
    },
    /// `C^{s1 s2 s3}(A1, A2, A3)`: four lobes in a row, the fourth has area `A1 - A2 + A3`.
    Chain { signs: [Sign; 3], areas: [Q; 3] },
    /// `E±(A)`: three lobes in a row `(A, A + D, D)`; the first crossing carries the sign.
    EDiagram { sign: Sign, area: Q, far_lobe: Q },
    /// Round counterclockwise circle.
    Unknot { area: Q },
}

fn positive(name: &Q) -> Result<(), BuildError> {
    if name.is_positive() {
        Ok(())
    } else {
        Err(BuildError::NonPositiveArea(to_short(name)))
    }
}

fn finish(p: Planarized) -> EnrichedKnotDiagram {
    EnrichedKnotDiagram::new(p.parts).expect("family builders produce valid diagrams")
}

/// Planarizes, reversing the curve if `probe` has the wrong winding sign.
fn oriented(mut curve: Vec<(i64, i64)>, probe: (i64, i64), want_positive: bool) -> Planarized {
    for _ in 0..2 {
        let p = planarize(&[curve.clone()]).expect("family polyline is generic");
        let d = EnrichedKnotDiagram::new(p.parts.clone()).expect("planarized family is valid");
        let f = p
            .face_at(q(probe.0), q(probe.1))
            .expect("probe lies in a face");
        if (d.winding(f) > 0) == want_positive {
            return p;
        }
        curve.reverse();
    }
    unreachable!("reversal flips every winding")
}

fn face(p: &Planarized, at: (i64, i64)) -> usize {
    p.face_at(q(at.0), q(at.1)).expect("probe lies in a face")
}

fn set_area(p: &mut Planarized, f: usize, a: &Q) {
    p.parts.faces[f].area = Some(a.clone());
}

/// Lobe at `(4, 0)` has winding +1, lobe at `(-4, 0)` winding -1.
pub fn eight(sign: Sign, area: Q) -> Result<EnrichedKnotDiagram, BuildError> {
    positive(&area)?;
    let mut p = oriented(vec![(-8, 4), (8, -4), (8, 4), (-8, -4)], (4, 0), true);
    let right = face(&p, (4, 0));
    let left = face(&p, (-4, 0));
    set_area(&mut p, right, &area);
    set_area(&mut p, left, &area);
    p.set_sign(0, right, sign);
    Ok(finish(p))
}

const TREFOIL: [(i64, i64); 24] = [
    (0, -100),
    (126, -77),
    (223, -13),
    (271, 71),
    (260, 150),
    (197, 199),
    (100, 200),
    (-3, 147),
    (-87, 50),
    (-129, -71),
    (-123, -187),
    (-74, -270),
    (0, -300),
    (74, -270),
    (123, -187),
    (129, -71),
    (87, 50),
    (3, 147),
    (-100, 200),
    (-197, 199),
    (-260, 150),
    (-271, 71),
    (-223, -13),
    (-126, -77),
];

const TREFOIL_LOBES: [(i64, i64); 3] = [(0, -228), (171, 60), (-171, 60)];
const TREFOIL_CENTER: (i64, i64) = (0, -10);

/// Trefoil with lobes (bigons) of winding 1 and the center of winding 2.
/// The sign is carried by the three center corners; it equals the writhe sign.
pub fn trefoil(sign: Sign, lobes: [Q; 3], center: Q) -> Result<EnrichedKnotDiagram, BuildError> {
    for a in lobes.iter().chain([&center]) {
        positive(a)?;
    }
    let mut p = oriented(TREFOIL.to_vec(), TREFOIL_CENTER, true);
    let c = face(&p, TREFOIL_CENTER);
    set_area(&mut p, c, &center);
    for (probe, a) in TREFOIL_LOBES.iter().zip(&lobes) {
        let f = face(&p, *probe);
        set_area(&mut p, f, a);
    }
    for x in p.face_crossings(c) {
        p.set_sign(x, c, sign);
    }
    Ok(finish(p))
}

/// One-parameter trefoil `T±(A)`: center area `A`, the lobes share the rest so that
/// the knot area `2A + 3·lobe` equals `total`.
pub fn trefoil_normalized(sign: Sign, a: Q, total: Q) -> Result<EnrichedKnotDiagram, BuildError> {
    positive(&a)?;
    let lobe = (total - &a * q(2)) / q(3);
    if !lobe.is_positive() {
        return Err(BuildError::InfeasibleDerivedArea {
            name: "trefoil lobe",
            value: to_short(&lobe),
        });
    }
    trefoil(sign, [lobe.clone(), lobe.clone(), lobe], a)
}

const CHAIN: [(i64, i64); 10] = [
    (-8, 0),
    (-4, 2),
    (4, -2),
    (12, 2),
    (20, -2),
    (24, 0),
    (20, 2),
    (12, -2),
    (4, 2),
    (-4, -2),
];
const CHAIN_LOBES: [(i64, i64); 4] = [(-4, 0), (4, 0), (12, 0), (20, 0)];

/// Chain `C^{s1 s2 s3}(A1, A2, A3)`; lobe windings alternate +1, -1, +1, -1 from the left,
/// and crossing `i` (between lobes `i` and `i+1`) has lobe corners of sign `s_i`.
pub fn chain(signs: [Sign; 3], areas: [Q; 3]) -> Result<EnrichedKnotDiagram, BuildError> {
    for a in &areas {
        positive(a)?;
    }
    let a4 = &areas[0] - &areas[1] + &areas[2];
    if !a4.is_positive() {
        return Err(BuildError::InfeasibleDerivedArea {
            name: "A4 = A1 - A2 + A3",
            value: to_short(&a4),
        });
    }
    let all = [areas[0].clone(), areas[1].clone(), areas[2].clone(), a4];
    lobe_row(&CHAIN, &CHAIN_LOBES, &all, &signs)
}

const E_ROW: [(i64, i64); 8] = [
    (-8, 0),
    (-4, 2),
    (4, -2),
    (12, 2),
    (16, 0),
    (12, -2),
    (4, 2),
    (-4, -2),
];
const E_LOBES: [(i64, i64); 3] = [(-4, 0), (4, 0), (12, 0)];

/// `E±(A)` with far lobe `D`: lobes `(A, A + D, D)` with windings +1, -1, +1.
/// The crossing next to `A` has lobe corners of the given sign, the other the opposite sign.
pub fn e_diagram(sign: Sign, area: Q, far_lobe: Q) -> Result<EnrichedKnotDiagram, BuildError> {
    positive(&area)?;
    positive(&far_lobe)?;
    let mid = &area + &far_lobe;
    lobe_row(&E_ROW, &E_LOBES, &[area, mid, far_lobe], &[sign, -sign])
}

fn lobe_row(
    curve: &[(i64, i64)],
    probes: &[(i64, i64)],
    areas: &[Q],
    signs: &[Sign],
) -> Result<EnrichedKnotDiagram, BuildError> {
    let mut p = oriented(curve.to_vec(), probes[0], true);
    let faces: Vec<usize> = probes.iter().map(|&pr| face(&p, pr)).collect();
    for (f, a) in faces.iter().zip(areas) {
        set_area(&mut p, *f, a);
    }
    for (i, s) in signs.iter().enumerate() {
        let shared: Vec<usize> = p
            .face_crossings(faces[i])
            .into_iter()
            .filter(|x| p.face_crossings(faces[i + 1]).contains(x))
            .collect();
        p.set_sign(shared[0], faces[i], *s);
    }
    Ok(finish(p))
}

/// Counterclockwise circle enclosing `area`.
pub fn unknot(area: Q) -> Result<EnrichedKnotDiagram, BuildError> {
    positive(&area)?;
    let mut p = planarize(&[vec![(0, 0), (4, 0), (4, 4), (0, 4)]]).expect("square is generic");
    let inside = 1 - p.parts.outer_face;
    set_area(&mut p, inside, &area);
    Ok(finish(p))
}

pub fn build(spec: &FamilySpec) -> Result<EnrichedKnotDiagram, BuildError> {
    match spec {
        FamilySpec::Eight { sign, area } => eight(*sign, area.clone()),
        FamilySpec::Trefoil {
            sign,
            lobes,
            center,
        } => trefoil(*sign, lobes.clone(), center.clone()),
        FamilySpec::Chain { signs, areas } => chain(*signs, areas.clone()),
        FamilySpec::EDiagram {
            sign,
            area,
            far_lobe,
        } => e_diagram(*sign, area.clone(), far_lobe.clone()),
        FamilySpec::Unknot { area } => unknot(area.clone()),
    }
}

/// Parses the command-line family notation, e.g. `eight + 2`, `chain -++ 4 3 2`,
/// `trefoil - 1 1 1 2`, `trefoil - 2 total 15`, `e + 1 10`, `unknot 1`.
pub fn parse_family(args: &[String]) -> Result<FamilySpec, BuildError> {
    use crate::rational::parse_q;
    let family = args
        .first()
        .map(|s| s.to_ascii_lowercase())
        .unwrap_or_default();
    let rest = &args[args.len().min(1)..];
    let num = |s: &String| parse_q(s).ok_or_else(|| BuildError::NonPositiveArea(s.clone()));
    let sign = |s: &String| match s.as_str() {
        "+" | "plus" => Some(Sign::Plus),
        "-" | "minus" => Some(Sign::Minus),
        _ => None,
    };
    match family.as_str() {
        "eight" | "8" => {
            let arity = BuildError::Arity {
                family: "eight",
                expected: "SIGN AREA",
            };
            if rest.len() != 2 {
                return Err(arity);
            }
            Ok(FamilySpec::Eight {
                sign: sign(&rest[0]).ok_or(arity)?,
                area: num(&rest[1])?,
            })
        }
        "trefoil" | "t" => {
            let arity = BuildError::Arity {
                family: "trefoil",
                expected: "SIGN L1 L2 L3 CENTER or SIGN CENTER total K",
            };
            let s = rest.first().and_then(sign).ok_or(BuildError::Arity {
                family: "trefoil",
                expected: "SIGN L1 L2 L3 CENTER or SIGN CENTER total K",
            })?;
            if rest.len() == 4 && rest[2] == "total" {
                let a = num(&rest[1])?;
                let total = num(&rest[3])?;
                let lobe = (total - &a * q(2)) / q(3);
                if !lobe.is_positive() {
                    return Err(BuildError::InfeasibleDerivedArea {
                        name: "trefoil lobe",
                        value: to_short(&lobe),
                    });
                }
                return Ok(FamilySpec::Trefoil {
                    sign: s,
                    lobes: [lobe.clone(), lobe.clone(), lobe],
                    center: a,
                });
            }
            if rest.len() != 5 {
                return Err(arity);
            }
            Ok(FamilySpec::Trefoil {
                sign: s,
                lobes: [num(&rest[1])?, num(&rest[2])?, num(&rest[3])?],
                center: num(&rest[4])?,
            })
        }
        "chain" | "c" => {
            let arity = || BuildError::Arity {
                family: "chain",
                expected: "SIGNS(3, e.g. -++) A1 A2 A3",
            };
            if rest.len() != 4 || rest[0].chars().count() != 3 {
                return Err(arity());
            }
            let mut signs = [Sign::Plus; 3];
            for (i, ch) in rest[0].chars().enumerate() {
                signs[i] = sign(&ch.to_string()).ok_or_else(arity)?;
            }
            Ok(FamilySpec::Chain {
                signs,
                areas: [num(&rest[1])?, num(&rest[2])?, num(&rest[3])?],
            })
        }
        "e" | "e_diagram" | "e-diagram" => {
            let arity = BuildError::Arity {
                family: "e",
                expected: "SIGN A [D]",
            };
            if rest.len() != 2 && rest.len() != 3 {
                return Err(arity);
            }
            let far = if rest.len() == 3 {
                num(&rest[2])?
            } else {
                q(E_DEFAULT_FAR_LOBE)
            };
            Ok(FamilySpec::EDiagram {
                sign: sign(&rest[0]).ok_or(arity)?,
                area: num(&rest[1])?,
                far_lobe: far,
            })
        }
        "unknot" | "o" => {
            if rest.len() != 1 {
                return Err(BuildError::Arity {
                    family: "unknot",
                    expected: "AREA",
                });
            }
            Ok(FamilySpec::Unknot {
                area: num(&rest[0])?,
            })
        }
        other => Err(BuildError::UnknownFamily(other.to_string())),
    }
}

/// Far lobe used by the one-parameter `E±(A)` form.
pub const E_DEFAULT_FAR_LOBE: i64 = 10;

/// Knot area used by the one-parameter `T±(A)` form.
pub const TREFOIL_DEFAULT_TOTAL: i64 = 15;

/// Area grid shared by the corollary sweeps.
pub fn area_grid() -> Vec<Q> {
    (1..=5).map(|n| crate::rational::qf(n, 2)).collect()
}

/// Knot area used by the one-parameter trefoils.
pub const TREFOIL_TOTAL: i64 = 15;

/// Far lobe used by the one-parameter E diagrams.
pub const E_FAR_LOBE: i64 = 10;

/// The named reference diagrams: every family at the parameters the corollary tables use,
/// plus the empty diagram.
pub fn corpus() -> Vec<(String, EnrichedKnotDiagram)> {
    let word = |s: Sign| if s == Sign::Plus { "plus" } else { "minus" };
    let tag = |a: &Q| {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}_{}", a.numer(), a.denom())
        }
    };
    let mut out = vec![("empty".to_string(), EnrichedKnotDiagram::empty())];
    let grid = area_grid();
    for s in [Sign::Plus, Sign::Minus] {
        for a in &grid {
            let name = format!("eight_{}_{}", word(s), tag(a));
            out.push((name, eight(s, a.clone()).expect("grid area")));
        }
    }
    for s in [Sign::Plus, Sign::Minus] {
        for a in &grid {
            let name = format!("trefoil_{}_{}", word(s), tag(a));
            let d = trefoil_normalized(s, a.clone(), q(TREFOIL_TOTAL)).expect("grid area");
            out.push((name, d));
        }
    }
    let chains: [(&str, [Sign; 3], [i64; 3]); 3] = [
        (
            "chain_mpp_4_3_2",
            [Sign::Minus, Sign::Plus, Sign::Plus],
            [4, 3, 2],
        ),
        (
            "chain_mpp_3_2_1",
            [Sign::Minus, Sign::Plus, Sign::Plus],
            [3, 2, 1],
        ),
        (
            "chain_pmp_1_2_2",
            [Sign::Plus, Sign::Minus, Sign::Plus],
            [1, 2, 2],
        ),
    ];
    for (name, signs, a) in chains {
        out.push((
            name.into(),
            chain(signs, a.map(q)).expect("positive fourth lobe"),
        ));
    }
    for s in [Sign::Plus, Sign::Minus] {
        for a in [1, 2] {
            let name = format!("e_{}_{a}", word(s));
            out.push((name, e_diagram(s, q(a), q(E_FAR_LOBE)).expect("positive")));
        }
    }
    for a in [1, 2] {
        out.push((format!("unknot_{a}"), unknot(q(a)).expect("positive")));
    }
    out
}

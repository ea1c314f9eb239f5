//! The regression table of known verdicts for the named families.

use serde::Serialize;

use crate::builders::{area_grid, chain, eight, trefoil_normalized, TREFOIL_TOTAL};
use crate::diagram::{EnrichedKnotDiagram, Sign};
use crate::obstruction::{check_obstruction, DiagramPair, EqualityPolicy, VerdictResult};
use crate::rational::{q, to_short, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub family: &'static str,
    pub lower: String,
    pub upper: String,
    pub expected: VerdictResult,
    pub actual: VerdictResult,
    pub agrees: bool,
}

fn expect(b: bool) -> VerdictResult {
    if b {
        VerdictResult::Obstructed
    } else {
        VerdictResult::NoObstructionFound
    }
}

fn row(
    family: &'static str,
    lower: (String, EnrichedKnotDiagram),
    upper: (String, EnrichedKnotDiagram),
    expected: VerdictResult,
) -> TableRow {
    let pair = DiagramPair::new(lower.1, upper.1);
    let actual = check_obstruction(&pair, EqualityPolicy::CylinderSharp).result;
    TableRow {
        family,
        lower: lower.0,
        upper: upper.0,
        expected,
        actual,
        agrees: expected == actual,
    }
}

fn named_eight(s: Sign, a: &Q) -> (String, EnrichedKnotDiagram) {
    (
        format!("8{s}({})", to_short(a)),
        eight(s, a.clone()).expect("positive"),
    )
}

fn named_trefoil(s: Sign, a: &Q) -> (String, EnrichedKnotDiagram) {
    let d = trefoil_normalized(s, a.clone(), q(TREFOIL_TOTAL)).expect("grid fits the total");
    (format!("T{s}({})", to_short(a)), d)
}

/// Every row in a fixed order. Expected verdicts:
/// `8+(A) ≺ 8+(B)` needs `A < B`, `8−(A) ≺ 8−(B)` needs `A > B`, likewise `T−` needs
/// `A > B` and `T+` needs `A < B`; `8+(B) ≺ C^{−++}(4,3,2)` needs `B < 2`; `8+(1)` and
/// `C^{+−+}(1,2,2)` are unrelated both ways.
pub fn corollary_table() -> Vec<TableRow> {
    let grid = area_grid();
    let mut rows = vec![];
    for (family, s, obstructed_if_a_ge_b) in [
        ("eight-plus", Sign::Plus, true),
        ("eight-minus", Sign::Minus, false),
    ] {
        for a in &grid {
            for b in &grid {
                let want = if obstructed_if_a_ge_b { a >= b } else { a <= b };
                rows.push(row(
                    family,
                    named_eight(s, a),
                    named_eight(s, b),
                    expect(want),
                ));
            }
        }
    }
    for (family, s, obstructed_if_a_ge_b) in [
        ("trefoil-minus", Sign::Minus, false),
        ("trefoil-plus", Sign::Plus, true),
    ] {
        for a in &grid {
            for b in &grid {
                let want = if obstructed_if_a_ge_b { a >= b } else { a <= b };
                rows.push(row(
                    family,
                    named_trefoil(s, a),
                    named_trefoil(s, b),
                    expect(want),
                ));
            }
        }
    }
    let c = || {
        let d = chain([Sign::Minus, Sign::Plus, Sign::Plus], [q(4), q(3), q(2)]).expect("A4 = 3");
        ("C-++(4,3,2)".to_string(), d)
    };
    for b in [1, 2, 3] {
        rows.push(row(
            "chain-area",
            named_eight(Sign::Plus, &q(b)),
            c(),
            expect(b >= 2),
        ));
    }
    let u = || {
        let d = chain([Sign::Plus, Sign::Minus, Sign::Plus], [q(1), q(2), q(2)]).expect("A4 = 1");
        ("C+-+(1,2,2)".to_string(), d)
    };
    let e = || named_eight(Sign::Plus, &q(1));
    rows.push(row("unrelated", e(), u(), VerdictResult::Obstructed));
    rows.push(row("unrelated", u(), e(), VerdictResult::Obstructed));
    rows
}

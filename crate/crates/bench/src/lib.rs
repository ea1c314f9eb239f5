//! Inputs shared by the benchmarks.

use ekd_core::builders::{chain, corpus, eight, trefoil_normalized, TREFOIL_TOTAL};
use ekd_core::{q, EnrichedKnotDiagram, Sign};

/// Named diagrams from small to largest in the corpus.
pub fn inputs() -> Vec<(&'static str, EnrichedKnotDiagram)> {
    vec![
        ("eight", eight(Sign::Plus, q(1)).expect("positive area")),
        (
            "trefoil",
            trefoil_normalized(Sign::Minus, q(2), q(TREFOIL_TOTAL)).expect("fits"),
        ),
        (
            "chain",
            chain([Sign::Minus, Sign::Plus, Sign::Plus], [q(4), q(3), q(2)]).expect("valid"),
        ),
    ]
}

/// Every diagram in the corpus, for the all-pairs runs.
pub fn all() -> Vec<EnrichedKnotDiagram> {
    corpus().into_iter().map(|(_, d)| d).collect()
}

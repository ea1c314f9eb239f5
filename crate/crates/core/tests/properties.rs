//! Property tests on random polygon diagrams, each against an independent computation.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ekd_core::canonical::{canonical_form, shape_form};
use ekd_core::disks::{enumerate_disks, DiskOptions};
use ekd_core::invariants::{rotation_numbers, total_signed_area, writhe};
use ekd_core::io::{parse, serialize};
use ekd_core::{q, qf, EnrichedKnotDiagram, Q};

use common::{brute_force_disks, random_diagram, random_polygon, random_r0, shuffled, OracleDisk};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shoelace(pts: &[(i64, i64)]) -> Q {
    let n = pts.len();
    let twice: i64 = (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum();
    qf(twice, 2)
}

/// Total turning of a closed polygon in whole turns, or `None` at a hairpin.
fn turning(pts: &[(i64, i64)]) -> Option<i64> {
    let n = pts.len();
    let mut total = 0.0;
    for i in 0..n {
        let (a, b, c) = (pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
        let (u, v) = ((b.0 - a.0, b.1 - a.1), (c.0 - b.0, c.1 - b.1));
        let cross = (u.0 * v.1 - u.1 * v.0) as f64;
        let dot = (u.0 * v.0 + u.1 * v.1) as f64;
        if cross == 0.0 && dot <= 0.0 {
            return None;
        }
        total += cross.atan2(dot);
    }
    Some((total / (2.0 * PI)).round() as i64)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 10);
        let back = parse(&serialize(&d)).unwrap();
        prop_assert_eq!(back, d);
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn faces_exceed_crossings_by_two(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 12);
        prop_assert_eq!(d.faces().len(), d.crossings().len() + 2);
    }

    #[test]
    fn signed_area_matches_the_shoelace_formula(seed in any::<u64>()) {
        let (pts, d) = random_polygon(&mut rng(seed), 12);
        prop_assert_eq!(total_signed_area(&d), shoelace(&pts));
    }

    #[test]
    fn rotation_matches_total_turning(seed in any::<u64>()) {
        let (pts, d) = random_polygon(&mut rng(seed), 12);
        let turns = turning(&pts);
        prop_assume!(turns.is_some());
        prop_assert_eq!(rotation_numbers(&d), vec![turns.unwrap()]);
    }

    #[test]
    fn reversal_negates_rotation_and_keeps_writhe(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 12);
        let r = d.reversed();
        prop_assert_eq!(writhe(&r), writhe(&d));
        let neg: Vec<i64> = rotation_numbers(&d).iter().map(|x| -x).collect();
        prop_assert_eq!(rotation_numbers(&r), neg);
        prop_assert_eq!(total_signed_area(&r), -total_signed_area(&d));
    }

    #[test]
    fn corner_signs_alternate_around_each_crossing(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 12);
        for c in 0..d.crossings().len() {
            for k in 0..4 {
                prop_assert_eq!(d.quadrant_sign(c, k), -d.quadrant_sign(c, (k + 1) % 4));
            }
        }
    }

    #[test]
    fn relabeling_keeps_the_canonical_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, 10);
        let form = canonical_form(&d);
        for _ in 0..5 {
            prop_assert_eq!(canonical_form(&shuffled(&d, &mut r)), form.clone());
        }
    }

    #[test]
    fn disks_match_the_brute_force_oracle(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 9);
        let fast: BTreeSet<OracleDisk> = enumerate_disks(&d, &DiskOptions::default())
            .iter()
            .map(|k| {
                let mut corners: Vec<(usize, i64, bool)> =
                    k.corners.iter().map(|c| (c.crossing, c.sign.value(), c.convex)).collect();
                corners.sort();
                OracleDisk { faces: k.faces.clone(), area: k.area.clone(), corners }
            })
            .collect();
        prop_assert_eq!(fast, brute_force_disks(&d));
    }

    #[test]
    fn disk_area_is_the_sum_of_its_faces(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 10);
        for k in enumerate_disks(&d, &DiskOptions::default()) {
            let sum: Q = k.faces.iter().map(|&f| d.area(f).unwrap().clone()).sum();
            prop_assert_eq!(&k.area, &sum);
            prop_assert!(k.area > q(0));
        }
    }

    #[test]
    fn r0_keeps_shape_and_invariants(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, 10);
        let Some((_, e)) = random_r0(&d, &mut r) else { return Ok(()) };
        prop_assert_eq!(shape_form(&e), shape_form(&d));
        prop_assert_eq!(writhe(&e), writhe(&d));
        prop_assert_eq!(rotation_numbers(&e), rotation_numbers(&d));
        prop_assert_eq!(total_signed_area(&e), total_signed_area(&d));
        prop_assert!(e.bounded_faces().all(|f| e.area(f).unwrap() > &q(0)));
    }
}

#[test]
fn empty_diagram_round_trips() {
    let d = EnrichedKnotDiagram::empty();
    assert_eq!(parse(&serialize(&d)).unwrap(), d);
}

#[test]
fn generators_are_not_trivial() {
    let mut r = rng(1);
    let (mut crossed, mut moved) = (0, 0);
    for _ in 0..100 {
        let d = random_diagram(&mut r, 10);
        crossed += usize::from(!d.crossings().is_empty());
        moved += usize::from(random_r0(&d, &mut r).is_some());
    }
    assert!(crossed > 50, "{crossed}");
    assert!(moved > 50, "{moved}");
}

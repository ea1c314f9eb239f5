//! The acceptance suite: eleven criteria, one PASS/FAIL line each.
//! Run with `cargo test -p ekd-core --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ekd_core::builders::{
    area_grid, chain, corpus, eight, trefoil_normalized, unknot, TREFOIL_TOTAL,
};
use ekd_core::canonical::{are_equivalent, canonical_form};
use ekd_core::disks::{disk_analysis, enumerate_disks, maslov_sum, pair_disks, DiskOptions, Side};
use ekd_core::invariants::legendrian_representable;
use ekd_core::moves::{replay, search_undercut, MoveKind, SearchOutcome};
use ekd_core::obstruction::{check_obstruction, DiagramPair, EqualityPolicy, VerdictResult};
use ekd_core::{q, qf, EnrichedKnotDiagram, Sign, Q};

use common::{brute_force_disks, random_r0, shuffled, OracleDisk};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn obstruct(lower: &EnrichedKnotDiagram, upper: &EnrichedKnotDiagram) -> VerdictResult {
    let pair = DiagramPair::new(lower.clone(), upper.clone());
    check_obstruction(&pair, EqualityPolicy::CylinderSharp).result
}

fn expect(b: bool) -> VerdictResult {
    if b {
        VerdictResult::Obstructed
    } else {
        VerdictResult::NoObstructionFound
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Figure eights: `8+(A), 8+(B)` obstructed iff `A ≥ B`; `8−` iff `A ≤ B`.
fn figure_eight_sweep() -> Outcome {
    let grid = area_grid();
    let mut n = 0;
    for a in &grid {
        for b in &grid {
            let plus = obstruct(
                &eight(Sign::Plus, a.clone()).unwrap(),
                &eight(Sign::Plus, b.clone()).unwrap(),
            );
            ensure(plus == expect(a >= b), || {
                format!("8+({a}) vs 8+({b}): {plus}")
            })?;
            let minus = obstruct(
                &eight(Sign::Minus, a.clone()).unwrap(),
                &eight(Sign::Minus, b.clone()).unwrap(),
            );
            ensure(minus == expect(a <= b), || {
                format!("8-({a}) vs 8-({b}): {minus}")
            })?;
            n += 2;
        }
    }
    Ok(format!("{n} pairs"))
}

/// Trefoils: `T−` obstructed iff `A ≤ B`, `T+` iff `A ≥ B`.
fn trefoil_sweep() -> Outcome {
    let grid = area_grid();
    let t = |s, a: &Q| trefoil_normalized(s, a.clone(), q(TREFOIL_TOTAL)).unwrap();
    let mut n = 0;
    for a in &grid {
        for b in &grid {
            let minus = obstruct(&t(Sign::Minus, a), &t(Sign::Minus, b));
            ensure(minus == expect(a <= b), || {
                format!("T-({a}) vs T-({b}): {minus}")
            })?;
            let plus = obstruct(&t(Sign::Plus, a), &t(Sign::Plus, b));
            ensure(plus == expect(a >= b), || {
                format!("T+({a}) vs T+({b}): {plus}")
            })?;
            n += 2;
        }
    }
    Ok(format!("{n} pairs, knot area {TREFOIL_TOTAL}"))
}

/// `8+(B)` below `C^{−++}(4,3,2)`: obstructed for `B ∈ {2, 3}`, not for `B = 1`.
fn chain_area_condition() -> Outcome {
    let c = chain([Sign::Minus, Sign::Plus, Sign::Plus], [q(4), q(3), q(2)]).unwrap();
    for (b, want) in [(1, false), (2, true), (3, true)] {
        let v = obstruct(&eight(Sign::Plus, q(b)).unwrap(), &c);
        ensure(v == expect(want), || format!("B = {b}: {v}"))?;
    }
    Ok("B = 1 open, B = 2, 3 obstructed".into())
}

fn unrelated_pair() -> Outcome {
    let e = eight(Sign::Plus, q(1)).unwrap();
    let c = chain([Sign::Plus, Sign::Minus, Sign::Plus], [q(1), q(2), q(2)]).unwrap();
    let up = obstruct(&e, &c);
    let down = obstruct(&c, &e);
    ensure(up == VerdictResult::Obstructed, || {
        format!("8+(1) below C: {up}")
    })?;
    ensure(down == VerdictResult::Obstructed, || {
        format!("C below 8+(1): {down}")
    })?;
    Ok("both directions obstructed".into())
}

fn eight_witnesses() -> Outcome {
    let cases = [
        (
            eight(Sign::Plus, q(1)).unwrap(),
            eight(Sign::Plus, q(2)).unwrap(),
        ),
        (
            eight(Sign::Minus, q(2)).unwrap(),
            eight(Sign::Minus, q(1)).unwrap(),
        ),
    ];
    for (a, b) in &cases {
        let out = search_undercut(a, b, 2, 20_000);
        let t = out.trace().ok_or_else(|| format!("no trace: {out:?}"))?;
        ensure(t.depth == 1 && t.steps[0].kind == MoveKind::R0, || {
            format!("trace {t:?}")
        })?;
        let end = replay(a, t).map_err(|e| e.to_string())?;
        ensure(canonical_form(&end) == canonical_form(b), || {
            "replay misses the target".into()
        })?;
    }
    Ok("two depth-1 R0 traces replayed exactly".into())
}

/// No pair has both a witness trace and an obstruction.
fn witness_consistency() -> Outcome {
    let c: Vec<EnrichedKnotDiagram> = corpus().into_iter().map(|(_, d)| d).collect();
    let mut pairs: Vec<(EnrichedKnotDiagram, EnrichedKnotDiagram)> = vec![];
    for a in &c {
        for b in &c {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut perturbed = 0;
    while perturbed < 200 {
        let d = &c[rng.gen_range(0..c.len())];
        if d.is_empty() {
            continue;
        }
        let Some((_, e)) = random_r0(d, &mut rng) else {
            continue;
        };
        pairs.push((d.clone(), e.clone()));
        pairs.push((e, d.clone()));
        perturbed += 1;
    }
    let (mut found, mut budget) = (0, 0);
    for (a, b) in &pairs {
        let out = search_undercut(a, b, 1, 2_000);
        if matches!(out, SearchOutcome::BudgetExhausted { .. }) {
            budget += 1;
        }
        if let Some(t) = out.trace() {
            found += 1;
            let v = obstruct(a, b);
            ensure(v != VerdictResult::Obstructed, || {
                format!("trace {} -> {} found but OBSTRUCTED", t.start, t.end)
            })?;
        }
    }
    ensure(found > 0, || "no traces found at all".into())?;
    Ok(format!(
        "{} pairs ({} corpus, {} perturbed), {found} traces, 0 conflicts, {budget} over budget",
        pairs.len(),
        c.len() * c.len(),
        2 * perturbed
    ))
}

fn as_oracle(d: &ekd_core::BoundDisk) -> OracleDisk {
    let mut corners: Vec<(usize, i64, bool)> = d
        .corners
        .iter()
        .map(|c| (c.crossing, c.sign.value(), c.convex))
        .collect();
    corners.sort();
    OracleDisk {
        faces: d.faces.clone(),
        area: d.area.clone(),
        corners,
    }
}

fn disk_oracle() -> Outcome {
    let mut total = 0;
    for (name, d) in corpus() {
        if d.bounded_faces().count() > 8 {
            continue;
        }
        let fast: BTreeSet<OracleDisk> = enumerate_disks(&d, &DiskOptions::default())
            .iter()
            .map(as_oracle)
            .collect();
        let slow = brute_force_disks(&d);
        ensure(fast == slow, || {
            format!(
                "{name}: only enumerated {:?}, only oracle {:?}",
                fast.difference(&slow).collect::<Vec<_>>(),
                slow.difference(&fast).collect::<Vec<_>>()
            )
        })?;
        total += slow.len();
    }
    Ok(format!("{total} disks over the corpus"))
}

fn maslov_tables() -> Outcome {
    let c: Vec<EnrichedKnotDiagram> = corpus().into_iter().map(|(_, d)| d).collect();
    let mut hits = 0;
    for a in &c {
        for b in &c {
            for disk in pair_disks(a, b) {
                let an = disk_analysis(&disk, disk.side);
                let pure = match disk.side {
                    Side::Upper => disk.all_signs(Sign::Plus),
                    Side::Lower => disk.all_signs(Sign::Minus),
                    Side::Single => false,
                };
                if disk.all_convex() && pure {
                    hits += 1;
                    ensure(
                        an.maslov_normal == Some(0) && an.expected_dim == Some(1),
                        || format!("{}: {an:?}", disk.label()),
                    )?;
                }
            }
        }
    }
    ensure(hits > 0, || "no pure-sign disks in the corpus".into())?;
    // closed cyclic sequences: μ₂ = −#(−) on the upper table, −#(+) on the lower one
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let signs: Vec<Sign> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        let minus = signs.iter().filter(|&&s| s == Sign::Minus).count() as i64;
        let plus = n as i64 - minus;
        let up = maslov_sum(Side::Upper, &signs);
        let low = maslov_sum(Side::Lower, &signs);
        ensure(up.is_integer() && low.is_integer(), || {
            format!("{signs:?}: {up}, {low}")
        })?;
        ensure(up == q(-minus) && low == q(-plus), || {
            format!("{signs:?}: {up}, {low}")
        })?;
        ensure((up == q(0)) == (minus == 0), || {
            format!("upper iff fails on {signs:?}")
        })?;
        ensure((low == q(0)) == (plus == 0), || {
            format!("lower iff fails on {signs:?}")
        })?;
    }
    Ok(format!(
        "{hits} pure-sign corpus disks, 500 random sequences"
    ))
}

fn legendrian() -> Outcome {
    for a in [1, 2] {
        let p = legendrian_representable(&eight(Sign::Plus, q(a)).unwrap())
            .map_err(|e| e.to_string())?;
        let m = legendrian_representable(&eight(Sign::Minus, q(a)).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(p.representable && !m.representable, || {
            format!("A = {a}: 8+ {}, 8- {}", p.representable, m.representable)
        })?;
    }
    Ok("8+ yes, 8- no for A = 1, 2".into())
}

fn unknot_preconditions() -> Outcome {
    let (u1, u2) = (unknot(q(1)).unwrap(), unknot(q(2)).unwrap());
    let v = check_obstruction(
        &DiagramPair::new(u1.clone(), u2),
        EqualityPolicy::CylinderSharp,
    );
    ensure(!v.preconditions.passes.knot_area, || {
        "unknot(1) vs unknot(2) passes the area check".into()
    })?;
    let v = check_obstruction(
        &DiagramPair::new(u1.clone(), u1),
        EqualityPolicy::CylinderSharp,
    );
    let p = &v.preconditions;
    ensure(p.all_pass(), || {
        format!("unknot(1) self pair fails: {:?}", p.failures())
    })?;
    ensure(p.euler_characteristic == 0, || {
        format!("chi = {}", p.euler_characteristic)
    })?;
    ensure(v.result == VerdictResult::NoObstructionFound, || {
        format!("{}", v.result)
    })?;
    Ok("area mismatch caught; self pair open with chi = 0".into())
}

fn canonical_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = corpus();
    for (name, d) in &c {
        let form = canonical_form(d);
        for _ in 0..1000 {
            let r = shuffled(d, &mut rng);
            ensure(canonical_form(&r) == form, || {
                format!("{name}: relabeling changed the form")
            })?;
        }
        if let Some(f) = d.bounded_faces().next() {
            let mut areas: Vec<Option<Q>> = d.faces().iter().map(|x| x.area.clone()).collect();
            areas[f] = areas[f].clone().map(|a| a + qf(1, 1_000_000));
            let nudged = d.with_areas(&areas).map_err(|e| e.to_string())?;
            ensure(!are_equivalent(d, &nudged), || {
                format!("{name}: nudged area still equivalent")
            })?;
        }
    }
    Ok(format!("{} diagrams x 1000 relabelings", c.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("figure-eight area sweep", figure_eight_sweep),
        ("trefoil area sweep", trefoil_sweep),
        ("chain area condition", chain_area_condition),
        ("unrelated diagrams", unrelated_pair),
        ("figure-eight witnesses", eight_witnesses),
        ("witness/obstruction consistency", witness_consistency),
        ("disk enumeration oracle", disk_oracle),
        ("Maslov tables", maslov_tables),
        ("Legendrian criterion", legendrian),
        ("unknot preconditions", unknot_preconditions),
        ("canonical forms", canonical_forms),
    ];
    let mut failed = vec![];
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let ms = t.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name}: {why} [{ms} ms]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use common::{mark_chars, Oracle, Shape};
use enriques18::cyclotomic::{eq, i_sqrt3, imaginary_unit, CycloNum};
use enriques18::dynkin::{Configuration, Kind};
use enriques18::enumerator::{enumerate_types, exclusion_reason, ExclusionReason, Family};
use enriques18::golden::{GoldenTables, WitnessRecord};
use enriques18::labeling::{enumerate_labelings, parse_marks, Labeling, Mark};
use enriques18::lefschetz::{
    curve_term, picard_budget_index4, point_term, solve_count_identity, LocalFixedPointType, Order6Contradiction,
};
use enriques18::realizability::{check_embedding, classify};
use enriques18::shioda_inose::{host_graph, validate_chain, SurfaceId};
use enriques18::{CanonicalIndex, Error, Execution};
use num::BigRational;
use std::collections::BTreeSet;
use std::time::Instant;

/// Set comparisons allow no missing or extra elements.
const SET_TOLERANCE: usize = 0;
/// Cyclotomic values are compared exactly, coefficient by coefficient.
const EXACT: bool = true;
/// Wall-clock budget for the whole suite, in seconds.
const RUNTIME_BUDGET_SECS: u64 = 60;

type Outcome = Result<String, String>;

fn names(list: &[&str]) -> BTreeSet<String> {
    list.iter().map(|s| Configuration::parse(s).unwrap().name()).collect()
}

fn set_check(what: &str, got: &BTreeSet<String>, want: &BTreeSet<String>) -> Outcome {
    let missing: Vec<_> = want.difference(got).collect();
    let extra: Vec<_> = got.difference(want).collect();
    if missing.len() + extra.len() > SET_TOLERANCE {
        Err(format!("{what}: missing {missing:?}, extra {extra:?}"))
    } else {
        Ok(format!("{what}: {} types", got.len()))
    }
}

fn shapes_of(config: &Configuration) -> Vec<Shape> {
    config
        .components()
        .iter()
        .map(|c| (c.kind().letter(), c.rank()))
        .collect()
}

fn criterion_1() -> Outcome {
    let got = enumerate_types(CanonicalIndex::Two).names();
    set_check(
        "index 2",
        &got,
        &names(&["A1+A17", "A3+A15", "A5+A13", "A7+A11", "A9+A9"]),
    )
}

fn criterion_2(golden: &GoldenTables) -> Outcome {
    let list = enumerate_types(CanonicalIndex::Three);
    let got: BTreeSet<String> = list
        .types
        .iter()
        .map(|t| {
            format!(
                "{}:{}",
                t.family.map(|f| f.numeral()).unwrap_or("-"),
                t.configuration.name()
            )
        })
        .collect();
    let mut want: BTreeSet<String> = BTreeSet::new();
    for w in &golden.index3.realized {
        want.insert(format!(
            "{}:{}",
            w.family.clone().unwrap_or_default(),
            w.configuration().map_err(|e| e.to_string())?.name()
        ));
    }
    for r in &golden.index3.indeterminate {
        want.insert(format!(
            "{}:{}",
            r.family,
            Configuration::parse(&r.type_name).unwrap().name()
        ));
    }
    set_check("index 3 (family:type)", &got, &want)?;
    let counts: Vec<usize> = list.family_counts().iter().map(|&(_, n)| n).collect();
    let expected = vec![1, 1, 3, 4, 2, 5, 3, 1, 2, 4, 10, 6, 6];
    if counts != expected || Family::ALL.len() != 13 {
        return Err(format!("family counts {counts:?}"));
    }
    Ok(format!("48 types, family counts {counts:?}"))
}

fn criterion_3() -> Outcome {
    let got = enumerate_types(CanonicalIndex::Four).names();
    set_check("index 4", &got, &names(&["A1+A17", "A5+A13", "A9+A9"]))?;
    for name in ["A3+A15", "A7+A11"] {
        let config = Configuration::parse(name).unwrap();
        match exclusion_reason(&config, CanonicalIndex::Four) {
            Some(ExclusionReason::FixedCurveExcess {
                minimum: 5, budget: 4, ..
            }) => {}
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    Ok("3 types; A3+A15 and A7+A11 excluded by f-count minimum 5 > N=4".into())
}

fn criterion_4() -> Outcome {
    let list = enumerate_types(CanonicalIndex::Six);
    if !list.types.is_empty() {
        return Err(format!("{} types", list.types.len()));
    }
    let trace = list.trace.ok_or("no trace")?;
    let delta = trace.delta.to_string();
    if delta != "-c - p - q + 2" {
        return Err(format!("δ = {delta}"));
    }
    let survivors: Vec<(i64, i64, i64, i64, i64)> = trace.survivors.iter().map(|s| (s.c, s.p, s.q, s.m, s.n)).collect();
    if survivors != [(0, 2, 0, 1, 4), (0, 2, 0, 2, 4)] {
        return Err(format!("survivors {survivors:?}"));
    }
    let branch_has = |m: i64, want: &Order6Contradiction| {
        trace
            .analyses
            .iter()
            .filter(|a| (a.c, a.p, a.q, a.m, a.n) == (0, 2, 0, m, 4))
            .flat_map(|a| &a.branches)
            .any(|b| b.contradiction.as_ref() == Some(want))
    };
    if !branch_has(1, &Order6Contradiction::Parity { remaining_rank: 15 }) {
        return Err("m=1 parity contradiction missing".into());
    }
    if !branch_has(2, &Order6Contradiction::FixedCurve) {
        return Err("m=2 fixed-curve contradiction missing".into());
    }
    if !trace.impossible {
        return Err("trace does not conclude impossibility".into());
    }
    Ok(format!(
        "empty; δ = {delta}; p=2, c=q=0, n=4; m=1 parity, m=2 fixed curve"
    ))
}

fn criterion_5() -> Outcome {
    let r3 = classify(CanonicalIndex::Three, Execution::Parallel);
    let want_ind = names(&[
        "D9+D9",
        "A3+D6+D9",
        "A6+D6+D6",
        "D4+D4+A10",
        "D4+D10+A4",
        "D4+D13+A1",
        "D4+D6+A8",
        "D4+D9+A5",
    ]);
    set_check("index 3 indeterminate", &r3.indeterminate(), &want_ind)?;
    if r3.realized().len() != 40 || r3.entries.len() != 48 {
        return Err(format!("index 3 realized {}", r3.realized().len()));
    }
    for index in [CanonicalIndex::Two, CanonicalIndex::Four] {
        let r = classify(index, Execution::Parallel);
        if r.realized().len() != r.entries.len() {
            return Err(format!("index {index}: {}", r.summary()));
        }
    }
    Ok("index 3: 40 realized + 8 indeterminate; indices 2 and 4 fully realized".into())
}

/// Printed chains that fail validation, and corrected chains that still fail.
fn audit_witnesses(index: CanonicalIndex, witnesses: &[WitnessRecord]) -> Result<(Vec<String>, Vec<String>), String> {
    let surface = SurfaceId::for_index(index).unwrap();
    let host = host_graph(surface, index).map_err(|e| e.to_string())?;
    let mut printed_failures = Vec::new();
    let mut corrected_failures = Vec::new();
    for w in witnesses {
        for ch in &w.chains {
            let component = ch.component().map_err(|e| e.to_string())?;
            let printed_curves = ch.printed_curves.clone().unwrap_or_else(|| ch.curves.clone());
            let printed_marks = ch.printed_marks.clone().unwrap_or_else(|| ch.marks.clone());
            let curves: Vec<&str> = printed_curves.iter().map(String::as_str).collect();
            let printed_ok = !ch.supplied
                && parse_marks(&printed_marks)
                    .map(|marks| {
                        let diagram = host.validate_diagram(&component, &curves, &marks).unwrap_or(false);
                        let chain = component.kind() != Kind::A
                            || validate_chain(surface, index, &curves, &marks).unwrap_or(false);
                        diagram && chain
                    })
                    .unwrap_or(false);
            let label = format!("index {index} {} {}", w.type_name, ch.component);
            if !printed_ok {
                printed_failures.push(label.clone());
            }
            if !ch.validates(&host).unwrap_or(false) || (ch.is_corrected() && w.corrected.is_none()) {
                corrected_failures.push(label);
            }
        }
        let whole = w
            .as_embedding(index)
            .map(|(c, l, e)| check_embedding(&c, &l, &host, &e))
            .map_err(|e| e.to_string())?;
        if !whole.is_empty() {
            corrected_failures.push(format!("index {index} {}: {}", w.type_name, whole[0]));
        }
    }
    Ok((printed_failures, corrected_failures))
}

fn criterion_6(golden: &GoldenTables) -> Outcome {
    let mut printed = Vec::new();
    let mut corrected = Vec::new();
    for (index, ws) in [
        (CanonicalIndex::Three, &golden.index3.realized),
        (CanonicalIndex::Two, &golden.index2_4.index2),
        (CanonicalIndex::Four, &golden.index2_4.index4),
    ] {
        let (p, c) = audit_witnesses(index, ws)?;
        printed.extend(p);
        corrected.extend(c);
    }
    if !corrected.is_empty() {
        return Err(format!("chains failing after correction: {corrected:?}"));
    }
    // the two sanctioned corrections, at both indices
    let allowed: BTreeSet<String> = [CanonicalIndex::Two, CanonicalIndex::Four]
        .iter()
        .flat_map(|i| [format!("index {i} A1+A17 A17"), format!("index {i} A5+A13 A13")])
        .collect();
    let printed: BTreeSet<String> = printed.into_iter().collect();
    let sanctioned_fail_as_printed = allowed.is_subset(&printed);
    let unexpected: Vec<&String> = printed.difference(&allowed).collect();
    if !sanctioned_fail_as_printed {
        return Err(format!(
            "expected corrections not needed: {:?}",
            allowed.difference(&printed)
        ));
    }
    if !unexpected.is_empty() {
        return Err(format!(
            "printed chains failing beyond the two corrected witnesses: {unexpected:?}; all pass after correction"
        ));
    }
    Ok("all printed chains validate; the two corrected witnesses pass after correction".into())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn criterion_7() -> Outcome {
    let one4 = CycloNum::one(4).unwrap();
    let one6 = CycloNum::one(6).unwrap();
    let one_minus_i = &one4 - &imaginary_unit();
    let u = &one6.scale(&rat(3, 1)) - &i_sqrt3();
    let lt = |o, a, b| LocalFixedPointType::new(o, a, b).unwrap();
    let cases = [
        (
            "point_term(4,(2,3))",
            point_term(&lt(4, 2, 3)).unwrap(),
            one_minus_i.scale(&rat(1, 4)),
        ),
        (
            "curve_term(4,0,-2)",
            curve_term(4, 0, -2).unwrap(),
            one_minus_i.scale(&rat(-1, 2)),
        ),
        (
            "point_term(6,(2,5))",
            point_term(&lt(6, 2, 5)).unwrap(),
            u.scale(&rat(1, 6)),
        ),
        (
            "point_term(6,(3,4))",
            point_term(&lt(6, 3, 4)).unwrap(),
            u.scale(&rat(1, 12)),
        ),
        (
            "curve_term(6,0,-2)",
            curve_term(6, 0, -2).unwrap(),
            u.scale(&rat(-1, 2)),
        ),
    ];
    for (name, got, want) in &cases {
        if eq(got, want) != EXACT {
            return Err(format!("{name} = {got}, want {want}"));
        }
    }
    let rels = [
        (CanonicalIndex::Three, "M", "M = N + 3"),
        (CanonicalIndex::Four, "M", "M = 2N + 4"),
        (CanonicalIndex::Six, "ℓ", "ℓ = c + 1"),
    ];
    for (index, symbol, want) in rels {
        let rel = solve_count_identity(index).map_err(|e| e.to_string())?;
        if rel.solved_for(symbol).as_deref() != Some(want) {
            return Err(format!("index {index}: {rel}"));
        }
    }
    Ok("5 closed forms exact; M-N=3, M-2N=4, ℓ=c+1".into())
}

fn criterion_8() -> Outcome {
    for n in 0..=4u32 {
        let got = picard_budget_index4(n).map_err(|e| e.to_string())?;
        let want = (11 + 2 * n as i64, 9 - 2 * n as i64);
        if got != want {
            return Err(format!("N={n}: {got:?}"));
        }
    }
    match picard_budget_index4(5) {
        Err(Error::BudgetViolation { .. }) => Ok("(s,t) = (11+2N, 9-2N) for N=0..4; N=5 rejected".into()),
        other => Err(format!("N=5: {other:?}")),
    }
}

fn criterion_9(oracle: &mut Oracle) -> Outcome {
    let all = common::multisets(18);
    if all.len() != 1599 {
        return Err(format!("{} rank-18 multisets", all.len()));
    }
    let mut lines = Vec::new();
    for index in [CanonicalIndex::Two, CanonicalIndex::Three, CanonicalIndex::Four] {
        let mut by_library = BTreeSet::new();
        let mut by_oracle = BTreeSet::new();
        for shapes in &all {
            let config = Configuration::parse(&common::shape_name(shapes)).unwrap();
            if !enumerate_labelings(&config, index).is_empty() {
                by_library.insert(config.name());
            }
            if oracle.feasible(shapes, index.value()) {
                by_oracle.insert(config.name());
            }
        }
        let listed = enumerate_types(index).names();
        set_check(&format!("index {index} library filter"), &by_library, &listed)?;
        set_check(&format!("index {index} brute-force filter"), &by_oracle, &listed)?;
        lines.push(format!("{index}:{}", listed.len()));
    }
    Ok(format!("1599 multisets; labelable {}", lines.join(" ")))
}

fn canonical_library(config: &Configuration, labeling: &Labeling) -> Vec<common::Marks> {
    let mut keyed: Vec<(Shape, common::Marks)> = config
        .components()
        .iter()
        .zip(&labeling.components)
        .map(|(c, m)| {
            let shape = (c.kind().letter(), c.rank());
            (shape, common::canonical(shape, &mark_chars(m)))
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, m)| m).collect()
}

fn criterion_10(oracle: &mut Oracle) -> Outcome {
    let mut total = 0;
    for index in [CanonicalIndex::Three, CanonicalIndex::Two, CanonicalIndex::Four] {
        for t in enumerate_types(index).types {
            let lib = enumerate_labelings(&t.configuration, index);
            let brute = oracle.labelings(&shapes_of(&t.configuration), index.value());
            let name = t.configuration.name();
            if lib.len() != 1 || brute.len() != 1 {
                return Err(format!(
                    "index {index} {name}: {} library, {} brute-force",
                    lib.len(),
                    brute.len()
                ));
            }
            if !brute.contains(&canonical_library(&t.configuration, &lib[0])) {
                return Err(format!(
                    "index {index} {name}: library labeling differs from brute force"
                ));
            }
            total += 1;
        }
    }
    Ok(format!("{total} types, one labeling each"))
}

fn criterion_11() -> Outcome {
    let mut checked = 0;
    for index in [CanonicalIndex::Two, CanonicalIndex::Three, CanonicalIndex::Four] {
        for t in enumerate_types(index).types {
            for l in &t.labelings {
                for (c, marks) in t.configuration.components().iter().zip(&l.components) {
                    for v in c.vertices() {
                        if marks[v] != Mark::S {
                            continue;
                        }
                        let nb = |m: Mark| c.neighbors(v).iter().filter(|&&u| marks[u] == m).count();
                        let ok = match index {
                            CanonicalIndex::Two => nb(Mark::S) == 0,
                            CanonicalIndex::Three => nb(Mark::F) == 1,
                            _ => nb(Mark::F) == 1 && nb(Mark::H) == 1,
                        };
                        if !ok {
                            return Err(format!("index {index} {}: vertex {v} of {c}", t.configuration));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    let s3 = host_graph(SurfaceId::S3, CanonicalIndex::Three).map_err(|e| e.to_string())?;
    for (i, name) in s3.names().iter().enumerate() {
        let want = if name.starts_with('F') || name.starts_with('G') {
            3
        } else {
            2
        };
        if s3.degree(i) != want {
            return Err(format!("S3 {name} degree {}", s3.degree(i)));
        }
    }
    let s2 = host_graph(SurfaceId::S2, CanonicalIndex::Two).map_err(|e| e.to_string())?;
    for (i, name) in s2.names().iter().enumerate() {
        let want = match name.as_str() {
            "F2" | "G2" => 4,
            "F1" | "F3" | "G1" | "G3" => 3,
            _ => 2,
        };
        if s2.degree(i) != want {
            return Err(format!("S2 {name} degree {}", s2.degree(i)));
        }
    }
    Ok(format!("{checked} s-vertices checked; S3 and S2 degree tables match"))
}

fn main() {
    let start = Instant::now();
    let golden = GoldenTables::embedded();
    let mut oracle = Oracle::default();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "index-2 candidate set", criterion_1()),
        (2, "index-3 candidates and families", criterion_2(&golden)),
        (3, "index-4 candidates and exclusions", criterion_3()),
        (4, "index-6 impossibility trace", criterion_4()),
        (5, "realizability split", criterion_5()),
        (6, "reference witness chains", criterion_6(&golden)),
        (7, "exact Lefschetz values", criterion_7()),
        (8, "index-4 Picard budget", criterion_8()),
        (9, "oracle equivalence", criterion_9(&mut oracle)),
        (10, "labeling uniqueness", criterion_10(&mut oracle)),
        (11, "local-rule and degree properties", criterion_11()),
    ];
    let mut failed = 0;
    for (n, title, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {n:>2} {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {n:>2} {title}: {detail}");
            }
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed.as_secs() < RUNTIME_BUDGET_SECS;
    println!(
        "{} runtime: {:.1}s (budget {RUNTIME_BUDGET_SECS}s)",
        if in_budget { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    println!("{}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 || !in_budget {
        std::process::exit(1);
    }
}

//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p canalizing --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use canalizing::verify::{
    closure_violations, detector_divergences, ncf_cell_mismatches, sample_functions, M3, M4,
    TWO_VARIABLE_CANALIZING, WORKED_EXAMPLE,
};
use canalizing::{
    classify, enumerate_canalizing, generate_canalizing_next, generate_ncfs, is_canalizing, is_ncf,
    ncf_census, ncf_matrix, pncf_census, unit_distance_bruteforce, unit_distance_formula,
    verification_suite, BooleanFunction, CanalizingWitness, VerifyOptions,
};

const SAMPLES: usize = 1_000_000;
const SEED: u64 = 0x00C0_FFEE_2014;

const AC1_LIMIT: Duration = Duration::from_secs(5);
const AC2_LIMIT: Duration = Duration::from_secs(30);
const AC5_LIMIT: Duration = Duration::from_secs(10);
const AC6_LIMIT: Duration = Duration::from_secs(20);
const AC7_LIMIT: Duration = Duration::from_secs(10);
const AC9_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn none<T: std::fmt::Display>(what: &str, found: &[T]) -> Result<(), String> {
    match found.first() {
        None => Ok(()),
        Some(first) => Err(format!("{what}: {} found, e.g. {first}", found.len())),
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn canalizing_counts() -> Outcome {
    let start = Instant::now();
    let listed: BTreeSet<BooleanFunction> = TWO_VARIABLE_CANALIZING
        .iter()
        .map(|s| BooleanFunction::parse(s, 2).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let c2 = enumerate_canalizing(2).map_err(|e| e.to_string())?;
    ensure(listed.len() == 14, "listed strings not distinct")?;
    ensure(c2 == listed, "n=2 class differs from the listed 14")?;
    let c3 = enumerate_canalizing(3).map_err(|e| e.to_string())?.len();
    ensure(
        c3 == 120 && 256 - c3 == 136,
        format!("n=3: {c3} canalizing"),
    )?;
    let c4 = enumerate_canalizing(4).map_err(|e| e.to_string())?.len();
    ensure(c4 == 3514, format!("n=4: {c4} canalizing"))?;
    let took = within(start, AC1_LIMIT)?;
    Ok(format!("14 / 120 (136 not) / 3514 in {took:.2?}"))
}

fn detector_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in [3, 4] {
        let all: Vec<_> = BooleanFunction::all(n)
            .map_err(|e| e.to_string())?
            .collect();
        let bad = detector_divergences(&all);
        none(&format!("n={n} divergences"), &bad)?;
        checked += all.len();
    }
    for n in [5, 6] {
        let mut fs = sample_functions(n, SAMPLES, SEED);
        if n == 5 {
            fs.push(BooleanFunction::parse(WORKED_EXAMPLE, 5).map_err(|e| e.to_string())?);
        }
        let bad = detector_divergences(&fs);
        none(&format!("n={n} divergences"), &bad)?;
        checked += fs.len();
    }
    let took = within(start, AC2_LIMIT)?;
    Ok(format!("{checked} functions, 0 divergences in {took:.2?}"))
}

fn worked_examples() -> Outcome {
    let r = classify("0xD0F0F0F0", Some(5)).map_err(|e| e.to_string())?;
    ensure(r.canalizing, "0xD0F0F0F0 not canalizing")?;
    ensure(
        r.witnesses == vec![CanalizingWitness::new(3, true, false)],
        format!("witnesses {:?}", r.witnesses),
    )?;
    ensure(r.detectors_agree, "detectors disagree on 0xD0F0F0F0")?;
    let xor = classify("0110", Some(2)).map_err(|e| e.to_string())?;
    ensure(
        !xor.canalizing && xor.witnesses.is_empty(),
        "XOR reported canalizing",
    )?;
    Ok("0xD0F0F0F0 -> {(x3, 1, 0)}, XOR non-canalizing".to_string())
}

fn closures() -> Outcome {
    for n in [2, 3] {
        let v = closure_violations(n).map_err(|e| e.to_string())?;
        none(&format!("n={n} violations"), &v)?;
        let all: Vec<_> = BooleanFunction::all(n)
            .map_err(|e| e.to_string())?
            .collect();
        for c in [BooleanFunction::zero(n), BooleanFunction::one(n)] {
            let c = c.map_err(|e| e.to_string())?;
            for g in &all {
                for h in [c.concat(g), g.concat(&c)] {
                    let h = h.map_err(|e| e.to_string())?;
                    ensure(
                        is_canalizing(&h),
                        format!("constant half {h} not canalizing"),
                    )?;
                }
            }
        }
    }
    Ok("n=2,3 exhaustive; every constant-half concatenation canalizing".to_string())
}

fn generation() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (from, budget) in [(2, 132), (3, 13_806)] {
        let source = enumerate_canalizing(from).map_err(|e| e.to_string())?;
        let target = enumerate_canalizing(from + 1).map_err(|e| e.to_string())?;
        let report = generate_canalizing_next(&source).map_err(|e| e.to_string())?;
        ensure(
            report.budget == budget,
            format!("budget {} != {budget}", report.budget),
        )?;
        ensure(
            report.produced == target,
            format!(
                "n={}: produced {} of {}",
                from + 1,
                report.produced.len(),
                target.len()
            ),
        )?;
        ensure(
            report.within_budget(),
            format!("{} invocations > {budget}", report.detector_invocations),
        )?;
        parts.push(format!("{} calls <= {budget}", report.detector_invocations));
    }
    let took = within(start, AC5_LIMIT)?;
    Ok(format!("exact sets, {} in {took:.2?}", parts.join(", ")))
}

fn ncf_counts() -> Outcome {
    let start = Instant::now();
    let m3 = ncf_matrix(3).map_err(|e| e.to_string())?;
    let m4 = ncf_matrix(4).map_err(|e| e.to_string())?;
    let want3: Vec<Vec<u64>> = M3.iter().map(|r| r.to_vec()).collect();
    let want4: Vec<Vec<u64>> = M4.iter().map(|r| r.to_vec()).collect();
    ensure(m3.cells == want3, format!("M3 = {:?}", m3.cells))?;
    ensure(m4.cells == want4, format!("M4 = {:?}", m4.cells))?;
    ensure(m3.ncf_count() == 64 && m4.ncf_count() == 736, "N_c differs")?;
    for (n, m) in [(3, &m3), (4, &m4)] {
        let census = ncf_census(n).map_err(|e| e.to_string())?;
        ensure(
            census.total() == m.ncf_count(),
            format!("n={n}: census {}", census.total()),
        )?;
        for j in 1..=m.columns() {
            ensure(
                census.column_sum(j) == 4 * m.column_sum(j),
                format!(
                    "n={n} column {j}: {} vs {}",
                    census.column_sum(j),
                    4 * m.column_sum(j)
                ),
            )?;
        }
        let cells = ncf_cell_mismatches(n).map_err(|e| e.to_string())?;
        none(&format!("n={n} cell mismatches"), &cells)?;
    }
    for n in 2..=4 {
        let generated = generate_ncfs(n).map_err(|e| e.to_string())?;
        let decomposed: BTreeSet<_> = BooleanFunction::all(n)
            .map_err(|e| e.to_string())?
            .filter(is_ncf)
            .collect();
        ensure(
            generated == decomposed,
            format!("n={n}: generated set differs"),
        )?;
    }
    let took = within(start, AC6_LIMIT)?;
    Ok(format!(
        "M3, M4, N_c 64 / 736, per-cell 4*M at n=3,4 in {took:.2?}"
    ))
}

fn pncf_counts() -> Outcome {
    let start = Instant::now();
    let c = pncf_census(4).map_err(|e| e.to_string())?;
    let d1 = c.depth(1);
    ensure(
        (d1.constant_tail, d1.noncanalizing_tail) == (10, 2176),
        format!("depth 1: {} + {}", d1.constant_tail, d1.noncanalizing_tail),
    )?;
    ensure(
        c.depth(2).total() == 336,
        format!("depth 2: {}", c.depth(2).total()),
    )?;
    ensure(
        c.depth(3).total() == 256,
        format!("depth 3: {}", c.depth(3).total()),
    )?;
    ensure(c.fully_nested == 736, format!("nested: {}", c.fully_nested))?;
    ensure(c.total() == 3514, format!("total: {}", c.total()))?;
    let took = within(start, AC7_LIMIT)?;
    Ok(format!(
        "2186 (10 + 2176) / 336 / 256 / 736 = 3514 in {took:.2?}"
    ))
}

fn unit_distance() -> Outcome {
    let f2 = unit_distance_formula(2).map_err(|e| e.to_string())?;
    let f3 = unit_distance_formula(3).map_err(|e| e.to_string())?;
    ensure((f2, f3) == (12, 76), format!("formula {f2} / {f3}"))?;
    let b2 =
        unit_distance_bruteforce(&BooleanFunction::parse("0001", 2).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let b3 = unit_distance_bruteforce(
        &BooleanFunction::parse("00000001", 3).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        b2.agrees(),
        format!("n=2 brute force {}", b2.bruteforce_value),
    )?;
    ensure(
        b3.agrees(),
        format!("n=3 brute force {}", b3.bruteforce_value),
    )?;
    Ok(format!(
        "formula 12 / 76, brute force {} / {} (distinct functions {} / {})",
        b2.bruteforce_value, b3.bruteforce_value, b2.distinct_functions, b3.distinct_functions
    ))
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let result = verification_suite(VerifyOptions {
        samples: SAMPLES,
        seed: SEED,
    })
    .map_err(|e| e.to_string())?;
    let failed: Vec<_> = result.failures().map(|c| c.name.clone()).collect();
    ensure(failed.is_empty(), format!("failed: {}", failed.join(", ")))?;
    let took = within(start, AC9_LIMIT)?;
    Ok(format!(
        "{} checks passed in {took:.2?}",
        result.checks.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 canalizing counts", canalizing_counts),
        ("2 detector equivalence", detector_equivalence),
        ("3 worked examples", worked_examples),
        ("4 concatenation closures", closures),
        ("5 generation completeness", generation),
        ("6 ncf counts", ncf_counts),
        ("7 pncf census", pncf_counts),
        ("8 unit-distance count", unit_distance),
        ("9 property suite", property_suite),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

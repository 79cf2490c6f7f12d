//! Reproduction suite: every reference count and structural claim, recomputed
//! exhaustively and compared against its expected value.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::function::{BooleanFunction, TableFormat, TruthIndex};
use crate::generate::{
    enumerate_canalizing, generate_canalizing_next, unit_distance_bruteforce, unit_distance_formula,
};
use crate::kmap::{kmap_witnesses, KMap};
use crate::ncf::{generate_ncfs, ncf_census, ncf_decompose, ncf_matrix};
use crate::pncf::{pncf_census, pncf_classify, Tail};
use crate::witness::{is_canalizing, oracle_witnesses, CanalizingWitness};

/// The five-variable worked example, canalizing only through `x_3 = 1 ⇒ 0`.
pub const WORKED_EXAMPLE: &str = "11010000111100001111000011110000";

/// The fourteen canalizing two-variable tables in their customary listing order.
pub const TWO_VARIABLE_CANALIZING: [&str; 14] = [
    "1100", "1101", "1110", "1111", "0000", "0001", "0010", "0011", "0111", "1011", "0100", "0101",
    "1000", "1010",
];

pub const M3: [[u64; 2]; 3] = [[4, 4], [0, 4], [0, 4]];
pub const M4: [[u64; 4]; 4] = [[8, 24, 24, 8], [0, 16, 24, 8], [0, 8, 24, 8], [0, 0, 24, 8]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Random functions per sampled variable count (5 and 6).
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 0x00C0_FFEE_2014,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// What the expected value stands for.
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Check {
    pub fn compare<T: fmt::Display + PartialEq>(
        name: &str,
        claim: &str,
        expected: T,
        computed: T,
    ) -> Self {
        Self {
            name: name.to_string(),
            claim: claim.to_string(),
            passed: expected == computed,
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    /// Passes when `problems` is empty; otherwise reports the first few.
    pub fn clean(name: &str, claim: &str, problems: &[String]) -> Self {
        let computed = if problems.is_empty() {
            "none".to_string()
        } else {
            let shown: Vec<_> = problems.iter().take(5).cloned().collect();
            format!("{} (e.g. {})", problems.len(), shown.join("; "))
        };
        Self {
            name: name.to_string(),
            claim: claim.to_string(),
            expected: "none".to_string(),
            passed: problems.is_empty(),
            computed,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: expected {}, computed {} [{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.expected,
            self.computed,
            self.claim
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSuiteResult {
    pub checks: Vec<Check>,
}

impl VerificationSuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Replaces the expected value of the named check and re-judges it.
    /// Returns `false` if no check has that name.
    pub fn override_expected(&mut self, name: &str, expected: &str) -> bool {
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => {
                c.expected = expected.to_string();
                c.passed = c.expected == c.computed;
                true
            }
            None => false,
        }
    }
}

impl fmt::Display for VerificationSuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        )
    }
}

fn hex(f: &BooleanFunction) -> String {
    f.format(TableFormat::default_for(f.n()))
}

/// Deterministic pseudo-random functions on `n` variables.
pub fn sample_functions(n: usize, count: usize, seed: u64) -> Vec<BooleanFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let mask = crate::function::table_mask(n);
    (0..count)
        .map(|_| BooleanFunction::from_bits(n, rng.gen::<u64>() & mask).expect("masked"))
        .collect()
}

/// Functions where the Karnaugh-map witnesses differ from the oracle's.
pub fn detector_divergences(fs: &[BooleanFunction]) -> Vec<BooleanFunction> {
    fs.par_iter()
        .filter(|f| kmap_witnesses(f).expect("n >= 2") != oracle_witnesses(f))
        .copied()
        .collect()
}

/// Witnesses that do not hold when checked directly on the table.
pub fn unsound_witnesses(fs: &[BooleanFunction]) -> Vec<String> {
    fs.par_iter()
        .flat_map_iter(|f| {
            let f = *f;
            let mut ws = oracle_witnesses(&f);
            if f.n() >= 2 {
                ws.extend(kmap_witnesses(&f).expect("n >= 2"));
            }
            ws.into_iter().filter_map(move |w| {
                let slice = f.restrict(w.variable, w.input).ok()?;
                (slice.constant_value() != Some(w.output)).then(|| format!("{} {}", hex(&f), w))
            })
        })
        .collect()
}

/// Violations of the concatenation closure properties on `n` variables:
/// complements, `ff`, `ff'`, a non-canalizing half, a constant half, and two
/// non-canalizing halves.
pub fn closure_violations(n: usize) -> Result<Vec<String>> {
    let all: Vec<BooleanFunction> = BooleanFunction::all(n)?.collect();
    let canal: Vec<bool> = all.iter().map(is_canalizing).collect();
    let mut out = Vec::new();
    for (f, &fc) in all.iter().zip(&canal) {
        if fc != is_canalizing(&f.complement()) {
            out.push(format!("complement closure fails for {}", hex(f)));
        }
        if fc && !is_canalizing(&f.concat(f)?) {
            out.push(format!("ff not canalizing for {}", hex(f)));
        }
        let ffc = is_canalizing(&f.concat(&f.complement())?);
        if fc && ffc != f.is_constant() {
            out.push(format!("ff' canalizing = {ffc} for {}", hex(f)));
        }
        for (g, &gc) in all.iter().zip(&canal) {
            let fg = is_canalizing(&f.concat(g)?);
            if !fc && fg != g.is_constant() {
                out.push(format!(
                    "non-canalizing {} with {}: canalizing = {fg}",
                    hex(f),
                    hex(g)
                ));
            }
            if f.is_constant() && !fg {
                out.push(format!(
                    "constant {} with {} not canalizing",
                    hex(f),
                    hex(g)
                ));
            }
            if !fc && !gc && fg {
                out.push(format!(
                    "two non-canalizing {} {} give canalizing",
                    hex(f),
                    hex(g)
                ));
            }
        }
    }
    Ok(out)
}

/// Canalizing concatenations `cg` for a constant head `c`, over every `g`.
pub fn constant_head_count(n: usize) -> Result<u64> {
    let zero = BooleanFunction::zero(n)?;
    let mut count = 0;
    for g in BooleanFunction::all(n)? {
        if is_canalizing(&zero.concat(&g)?) {
            count += 1;
        }
    }
    Ok(count)
}

/// Cells where the exhaustive census differs from four times the matrix.
pub fn ncf_cell_mismatches(n: usize) -> Result<Vec<String>> {
    let census = ncf_census(n)?;
    let matrix = ncf_matrix(n)?;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=matrix.columns() {
            let (c, m) = (census.get(i, j), 4 * matrix.get(i, j));
            if c != m {
                let offenders: Vec<String> = BooleanFunction::all(n)?
                    .filter(|f| {
                        f.ncf_distance() as usize == 2 * j - 1
                            && ncf_decompose(f).is_some_and(|d| d.starting_variable() == i)
                    })
                    .take(3)
                    .map(|f| hex(&f))
                    .collect();
                out.push(format!(
                    "n={n} cell ({i},{j}): census {c}, 4*M {m}, e.g. {}",
                    offenders.join(",")
                ));
            }
        }
    }
    Ok(out)
}

/// Round trips and structural invariants of the primitive operations and the
/// decompositions, over every function with `n <= 3` (`n <= 4` for the
/// decompositions) and a sample at `n = 5`.
pub fn property_violations(seed: u64) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut small: Vec<BooleanFunction> = Vec::new();
    for n in 1..=3 {
        small.extend(BooleanFunction::all(n)?);
    }
    let mut text_cases = small.clone();
    text_cases.extend(sample_functions(5, 2_000, seed));
    for f in &text_cases {
        for fmt in [TableFormat::Binary, TableFormat::Hex] {
            if fmt == TableFormat::Hex && f.n() < 2 {
                continue;
            }
            let text = f.format(fmt);
            if BooleanFunction::parse(&text, f.n()).ok() != Some(*f) {
                out.push(format!("parse/format round trip fails for {text}"));
            }
        }
    }
    for f in &small {
        let n = f.n();
        let fc = f.complement();
        if fc.complement() != *f || f.hamming_distance(&fc)? as usize != f.len() {
            out.push(format!("complement broken for {}", hex(f)));
        }
        if f.ncf_distance() != fc.ncf_distance() {
            out.push(format!(
                "ncf distance not complement-symmetric for {}",
                hex(f)
            ));
        }
        for k in 1..=n + 1 {
            for a in [false, true] {
                for b in [false, true] {
                    let g = f.insert_canalizing_variable(k, a, b)?;
                    if g.restrict(k, a)?.constant_value() != Some(b) || g.restrict(k, !a)? != *f {
                        out.push(format!("insert ({k},{a},{b}) broken for {}", hex(f)));
                    }
                }
            }
        }
    }
    for n in 1..=3 {
        let fs: Vec<_> = BooleanFunction::all(n)?.collect();
        for f in &fs {
            for g in &fs {
                let h = f.concat(g)?;
                if h.restrict(n + 1, false)? != *f || h.restrict(n + 1, true)? != *g {
                    out.push(format!("concat/restrict broken for {} {}", hex(f), hex(g)));
                }
            }
        }
        for i in 1..=n {
            let x = BooleanFunction::variable_pattern(i, n)?;
            if x.essential_variables() != vec![i] || x.ncf_distance() as usize != x.len() / 2 {
                out.push(format!("variable pattern x{i} at n={n}"));
            }
        }
    }
    for n in 1..=4 {
        for f in BooleanFunction::all(n)? {
            let ws = oracle_witnesses(&f);
            let flipped: BTreeSet<CanalizingWitness> =
                ws.iter().map(CanalizingWitness::complemented).collect();
            if oracle_witnesses(&f.complement()) != flipped {
                out.push(format!("complement witness map fails for {}", hex(&f)));
            }
            if let Some(d) = ncf_decompose(&f) {
                if d.reconstruct() != f {
                    out.push(format!("ncf reconstruction fails for {}", hex(&f)));
                }
                if ws.is_empty() || f.ncf_distance() % 2 == 0 {
                    out.push(format!("ncf {} not canalizing or even distance", hex(&f)));
                }
                let vars: BTreeSet<usize> = d.layers.iter().map(|l| l.variable).collect();
                if vars.len() != n {
                    out.push(format!("ncf layers of {} not a permutation", hex(&f)));
                }
                match ncf_decompose(&f.complement()) {
                    Some(dc)
                        if dc.layers.iter().zip(&d.layers).all(|(x, y)| {
                            x.variable == y.variable && x.input == y.input && x.output != y.output
                        }) => {}
                    _ => out.push(format!(
                        "complement of ncf {} decomposes differently",
                        hex(&f)
                    )),
                }
            }
            if n >= 2 && !ws.is_empty() {
                let c = pncf_classify(&f)?;
                if c.reconstruct() != f {
                    out.push(format!("pncf reconstruction fails for {}", hex(&f)));
                }
                if let Tail::NonCanalizingTail { residual, .. } = &c.tail {
                    if is_canalizing(residual) || residual.is_constant() {
                        out.push(format!("pncf tail of {} still peelable", hex(&f)));
                    }
                }
                if let Tail::ConstantTail { .. } = c.tail {
                    let expect_const = c.depth < n;
                    if !expect_const {
                        out.push(format!("pncf constant tail at full depth for {}", hex(&f)));
                    }
                }
            }
        }
    }
    // evaluate agrees with the raw bits
    for f in &small {
        for t in 0..f.len() {
            if f.evaluate(TruthIndex(t))? != ((f.bits() >> t) & 1 == 1) {
                out.push(format!("evaluate broken for {}", hex(f)));
            }
        }
    }
    Ok(out)
}

/// Runs every check. Sampled detector comparisons use `opts`.
pub fn verification_suite(opts: VerifyOptions) -> Result<VerificationSuiteResult> {
    let mut checks = Vec::new();

    let listed: BTreeSet<BooleanFunction> = TWO_VARIABLE_CANALIZING
        .iter()
        .map(|s| BooleanFunction::parse(s, 2))
        .collect::<Result<_>>()?;
    let c2 = enumerate_canalizing(2)?;
    checks.push(Check::compare(
        "canalizing-n2",
        "fourteen listed two-variable canalizing functions",
        format!("{} (listed set)", listed.len()),
        format!(
            "{} ({})",
            c2.len(),
            if c2 == listed {
                "listed set"
            } else {
                "different set"
            }
        ),
    ));
    let c3 = enumerate_canalizing(3)?;
    checks.push(Check::compare(
        "canalizing-n3",
        "120 canalizing and 136 non-canalizing three-variable functions",
        "120/136".to_string(),
        format!("{}/{}", c3.len(), 256 - c3.len()),
    ));
    let c4 = enumerate_canalizing(4)?;
    checks.push(Check::compare(
        "canalizing-n4",
        "3514 canalizing four-variable functions",
        3514,
        c4.len(),
    ));

    let mut exhaustive: Vec<BooleanFunction> = BooleanFunction::all(3)?.collect();
    exhaustive.extend(BooleanFunction::all(4)?);
    let divergent = detector_divergences(&exhaustive);
    checks.push(Check::clean(
        "detector-equivalence-exhaustive",
        "Karnaugh-map witnesses equal restriction witnesses, all n=3 and n=4 functions",
        &divergent.iter().map(hex).collect::<Vec<_>>(),
    ));
    let example = BooleanFunction::parse(WORKED_EXAMPLE, 5)?;
    let mut sampled = vec![example];
    sampled.extend(sample_functions(5, opts.samples, opts.seed));
    sampled.extend(sample_functions(6, opts.samples, opts.seed));
    let divergent = detector_divergences(&sampled);
    checks.push(Check::clean(
        "detector-equivalence-sampled",
        &format!(
            "Karnaugh-map witnesses equal restriction witnesses, {} samples each at n=5 and n=6",
            opts.samples
        ),
        &divergent.iter().map(hex).collect::<Vec<_>>(),
    ));
    checks.push(Check::clean(
        "witness-soundness",
        "every reported witness restricts to its constant",
        &unsound_witnesses(&exhaustive),
    ));

    let kmap_ws: Vec<_> = kmap_witnesses(&example)?.into_iter().collect();
    let oracle_ws: Vec<_> = oracle_witnesses(&example).into_iter().collect();
    let zero_rows = {
        let k = KMap::build(&example)?;
        (0..k.row_count())
            .filter(|&r| (0..k.col_count()).all(|c| !k.cell(r, c)))
            .count()
    };
    checks.push(Check::compare(
        "worked-example",
        "0xD0F0F0F0 canalizing only via (x3, 1, 0), four zero rows",
        "[(x3, 1, 0)] / [(x3, 1, 0)] / 4 rows".to_string(),
        format!(
            "[{}] / [{}] / {} rows",
            join(&kmap_ws),
            join(&oracle_ws),
            zero_rows
        ),
    ));
    let xor = BooleanFunction::parse("0110", 2)?;
    checks.push(Check::compare(
        "xor-not-canalizing",
        "two-variable XOR needs both inputs",
        false,
        is_canalizing(&xor) || !kmap_witnesses(&xor)?.is_empty(),
    ));

    let mut closures = closure_violations(2)?;
    closures.extend(closure_violations(3)?);
    checks.push(Check::clean(
        "concatenation-closures",
        "complement, ff, ff', constant-half and non-canalizing-pair rules at n=2,3",
        &closures,
    ));
    checks.push(Check::compare(
        "constant-head-count",
        "a constant half makes every concatenation canalizing (2^(2^n) tails, not 2^n)",
        "16/256".to_string(),
        format!("{}/{}", constant_head_count(2)?, constant_head_count(3)?),
    ));

    let g3 = generate_canalizing_next(&c2)?;
    let g4 = generate_canalizing_next(&c3)?;
    let mut generation = Vec::new();
    for (report, expected) in [(&g3, &c3), (&g4, &c4)] {
        let n = report.n_source + 1;
        if report.produced != *expected {
            generation.push(format!(
                "n={n}: produced {} vs class {}",
                report.produced.len(),
                expected.len()
            ));
        }
        if !report.within_budget() {
            generation.push(format!(
                "n={n}: {} detector calls over budget {}",
                report.detector_invocations, report.budget
            ));
        }
    }
    checks.push(Check::clean(
        "generation",
        &format!(
            "concatenation generates the full classes at n=3 and n=4 within (X-2)^2-(X-2) \
             detector calls ({} of {}, {} of {})",
            g3.detector_invocations, g3.budget, g4.detector_invocations, g4.budget
        ),
        &generation,
    ));

    let m3 = ncf_matrix(3)?;
    let m4 = ncf_matrix(4)?;
    let m3_ok = m3.cells.iter().zip(M3.iter()).all(|(a, b)| a[..] == b[..]);
    let m4_ok = m4.cells.iter().zip(M4.iter()).all(|(a, b)| a[..] == b[..]);
    checks.push(Check::compare(
        "ncf-matrix",
        "M_3 and M_4 cells with 64 and 736 NCFs",
        "M3 ok 64, M4 ok 736".to_string(),
        format!(
            "M3 {} {}, M4 {} {}",
            ok(m3_ok),
            m3.ncf_count(),
            ok(m4_ok),
            m4.ncf_count()
        ),
    ));
    let mut column_problems = Vec::new();
    for n in [3, 4] {
        let census = ncf_census(n)?;
        let matrix = ncf_matrix(n)?;
        if census.total() != matrix.ncf_count() || census.even_distance != 0 {
            column_problems.push(format!(
                "n={n}: census {} vs {}, even {}",
                census.total(),
                matrix.ncf_count(),
                census.even_distance
            ));
        }
        for j in 1..=matrix.columns() {
            if census.column_sum(j) != 4 * matrix.column_sum(j) {
                column_problems.push(format!(
                    "n={n} distance {}: census {} vs {}",
                    2 * j - 1,
                    census.column_sum(j),
                    4 * matrix.column_sum(j)
                ));
            }
        }
    }
    checks.push(Check::clean(
        "ncf-census-columns",
        "exhaustive NCF totals and per-distance totals equal 4*M at n=3,4",
        &column_problems,
    ));
    let mut cells = ncf_cell_mismatches(3)?;
    cells.extend(ncf_cell_mismatches(4)?);
    checks.push(Check::clean(
        "ncf-census-cells",
        "exhaustive NCF count per starting variable and distance equals 4*M at n=3,4",
        &cells,
    ));
    let mut generated = Vec::new();
    for n in 1..=4 {
        let built = generate_ncfs(n)?;
        let decomposed: BTreeSet<BooleanFunction> = BooleanFunction::all(n)?
            .filter(|f| ncf_decompose(f).is_some())
            .collect();
        if built != decomposed {
            generated.push(format!(
                "n={n}: {} generated vs {} decomposed",
                built.len(),
                decomposed.len()
            ));
        }
    }
    checks.push(Check::clean(
        "ncf-generation",
        "variable insertion generates exactly the decomposable functions, n<=4",
        &generated,
    ));

    let p4 = pncf_census(4)?;
    let d1 = p4.depth(1);
    checks.push(Check::compare(
        "pncf-census-n4",
        "depth 1: 10+2176, depth 2: 336, depth 3: 256, nested: 736, total 3514",
        "10+2176 / 336 / 256 / 736 / 3514".to_string(),
        format!(
            "{}+{} / {} / {} / {} / {}",
            d1.constant_tail,
            d1.noncanalizing_tail,
            p4.depth(2).total(),
            p4.depth(3).total(),
            p4.fully_nested,
            p4.total()
        ),
    ));

    let unit2 = unit_distance_bruteforce(&BooleanFunction::parse("0001", 2)?)?;
    let unit3 = unit_distance_bruteforce(&BooleanFunction::parse("00000001", 3)?)?;
    checks.push(Check::compare(
        "unit-distance-concatenations",
        "formula 12 and 76 against brute-force concatenation counts",
        format!(
            "{}/{}",
            unit_distance_formula(2)?,
            unit_distance_formula(3)?
        ),
        format!("{}/{}", unit2.bruteforce_value, unit3.bruteforce_value),
    ));

    checks.push(Check::clean(
        "properties",
        "round trips, reconstruction, complement symmetry, insertion and restriction",
        &property_violations(opts.seed)?,
    ));

    Ok(VerificationSuiteResult { checks })
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "wrong"
    }
}

fn join(ws: &[CanalizingWitness]) -> String {
    ws.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_expectation_reports_failure() {
        let c = Check::compare("canalizing-n4", "corrupted", 3515, 3514);
        assert!(!c.passed);
        let line = c.to_string();
        assert!(line.starts_with("FAIL canalizing-n4"));
        assert!(line.contains("3515") && line.contains("3514"));
        let suite = VerificationSuiteResult { checks: vec![c] };
        assert!(!suite.passed());
    }

    #[test]
    fn clean_check_lists_problems() {
        let c = Check::clean("x", "y", &["a".to_string(), "b".to_string()]);
        assert!(!c.passed);
        assert!(c.computed.starts_with("2 (e.g. a; b)"));
        assert!(Check::clean("x", "y", &[]).passed);
    }

    #[test]
    fn samples_are_deterministic() {
        assert_eq!(sample_functions(6, 10, 7), sample_functions(6, 10, 7));
        assert_ne!(sample_functions(6, 10, 7), sample_functions(6, 10, 8));
    }

    #[test]
    fn small_suite_passes() {
        let result = verification_suite(VerifyOptions {
            samples: 2_000,
            seed: 1,
        })
        .unwrap();
        assert!(result.passed(), "{result}");
        assert_eq!(result.checks.len(), 18);
    }
}

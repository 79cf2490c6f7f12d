//! Building the canalizing class on `n + 1` variables from the class on `n`
//! variables by concatenating truth tables, plus the unit-distance
//! concatenation count.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, TableFormat, MAX_VARS};
use crate::kmap::kmap_witnesses;
use crate::witness::{is_canalizing, oracle_witnesses};

/// Every canalizing function on `n <= 4` variables (constants included).
pub fn enumerate_canalizing(n: usize) -> Result<BTreeSet<BooleanFunction>> {
    let all: Vec<BooleanFunction> = BooleanFunction::all(n)?.collect();
    Ok(all
        .into_par_iter()
        .filter(is_canalizing)
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// How many concatenations fell into each shortcut category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryTallies {
    /// `fc` and `cf` for a constant `c` and `f` outside the source set.
    /// Always canalizing in the new variable.
    pub noncanalizing_with_constant: u64,
    /// `fc` and `cf` for a constant `c` and `f` inside the source set.
    pub canalizing_with_constant: u64,
    /// `ff` for non-constant `f` in the source; always canalizing.
    pub diagonal: u64,
    /// `ff'` for non-constant `f` in the source; never canalizing.
    pub complement_skipped: u64,
    /// Ordered pairs with a non-canalizing half and a non-constant other half;
    /// never canalizing, never formed.
    pub noncanalizing_pairs_skipped: u64,
    /// Pairs handed to the Karnaugh-map detector.
    pub checked_pairs: u64,
    /// Checked pairs the detector accepted.
    pub detector_positives: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub n_source: usize,
    pub produced: BTreeSet<BooleanFunction>,
    pub detector_invocations: u64,
    pub tallies: CategoryTallies,
    /// `(X - 2)^2 - (X - 2)` with `X` the source size.
    pub budget: u64,
}

impl GenerationReport {
    pub fn within_budget(&self) -> bool {
        self.detector_invocations <= self.budget
    }
}

/// `(X - 2)^2 - (X - 2)`, saturating at zero.
pub fn detector_budget(x: u64) -> u64 {
    let m = x.saturating_sub(2);
    m * m - m
}

/// Generates the canalizing functions on `n + 1` variables from a set of
/// canalizing functions on `n` variables.
///
/// Concatenations with a constant half and the diagonal `ff` are accepted
/// without a check, `ff'` and pairs with a non-canalizing half are rejected
/// without a check, and every remaining ordered pair of distinct non-constant
/// source functions goes through the Karnaugh-map detector.
pub fn generate_canalizing_next(source: &BTreeSet<BooleanFunction>) -> Result<GenerationReport> {
    let first = source.iter().next().ok_or(Error::EmptySource)?;
    let n = first.n();
    if n + 1 > MAX_VARS || n > 4 {
        return Err(Error::EnumerationTooLarge { n, max: 4 });
    }
    for f in source {
        if f.n() != n {
            return Err(Error::ArityMismatch {
                left: n,
                right: f.n(),
            });
        }
        if !is_canalizing(f) {
            return Err(Error::NonCanalizingSource {
                table: f.format(TableFormat::default_for(n)),
            });
        }
    }

    let zero = BooleanFunction::zero(n)?;
    let one = BooleanFunction::one(n)?;
    let mut produced = BTreeSet::new();
    let mut tallies = CategoryTallies::default();

    for f in BooleanFunction::all(n)? {
        for c in [zero, one] {
            produced.insert(f.concat(&c)?);
            produced.insert(c.concat(&f)?);
        }
        if source.contains(&f) {
            tallies.canalizing_with_constant += 4;
        } else {
            tallies.noncanalizing_with_constant += 4;
        }
    }

    let nonconstant: Vec<BooleanFunction> = source
        .iter()
        .filter(|f| !f.is_constant())
        .copied()
        .collect();
    for f in &nonconstant {
        produced.insert(f.concat(f)?);
        tallies.diagonal += 1;
    }

    let per_head: Vec<(u64, u64, Vec<BooleanFunction>)> = nonconstant
        .par_iter()
        .map(|f| {
            let complement = f.complement();
            let mut skipped = 0;
            let mut checked = 0;
            let mut hits = Vec::new();
            for g in &nonconstant {
                if g == f {
                    continue;
                }
                if *g == complement {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                let h = f.concat(g).expect("same arity, n + 1 <= MAX_VARS");
                if !kmap_witnesses(&h).expect("n + 1 >= 2").is_empty() {
                    hits.push(h);
                }
            }
            (skipped, checked, hits)
        })
        .collect();
    for (skipped, checked, hits) in per_head {
        tallies.complement_skipped += skipped;
        tallies.checked_pairs += checked;
        tallies.detector_positives += hits.len() as u64;
        produced.extend(hits);
    }

    let outside = (1u64 << (1u64 << n)) - source.len() as u64;
    let inside = nonconstant.len() as u64;
    tallies.noncanalizing_pairs_skipped = outside * outside + 2 * outside * inside;

    Ok(GenerationReport {
        n_source: n,
        produced,
        detector_invocations: tallies.checked_pairs,
        tallies,
        budget: detector_budget(source.len() as u64),
    })
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, j| acc * (n - j) as i128 / (j + 1) as i128)
}

/// `2 · Σ_{x=1..n} C(n, x) · 2^(2^n / 2^x) · (-1)^(x-1)`.
pub fn unit_distance_formula(n: usize) -> Result<i128> {
    if n == 0 {
        return Err(Error::TooFewVariables { n, min: 1 });
    }
    if n > MAX_VARS {
        return Err(Error::UnsupportedVariableCount { n, max: MAX_VARS });
    }
    let n32 = n as u32;
    let sum: i128 = (1..=n32)
        .map(|x| {
            let term = binomial(n32, x) * (1i128 << ((1u32 << n32) >> x));
            if x % 2 == 1 {
                term
            } else {
                -term
            }
        })
        .sum();
    Ok(2 * sum)
}

/// Brute-force counts of canalizing concatenations with a unit-distance `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDistanceCount {
    pub n: usize,
    pub formula_value: i128,
    /// Concatenation events `fg` and `gf`, over all `g`, canalizing in one of
    /// the original `n` variables.
    pub bruteforce_value: u64,
    /// The same count for `fg` alone.
    pub one_sided: u64,
    /// Distinct functions behind `bruteforce_value` (`ff` is counted once).
    pub distinct_functions: u64,
    /// Events canalizing in any variable, the new one included.
    pub any_variable: u64,
    pub interpretation: String,
}

impl UnitDistanceCount {
    pub fn agrees(&self) -> bool {
        self.formula_value == self.bruteforce_value as i128
    }
}

/// Counts, over every `g` on `n` variables and both sides, the concatenations
/// of `f` and `g` that are canalizing in an original variable.
pub fn unit_distance_bruteforce(f: &BooleanFunction) -> Result<UnitDistanceCount> {
    let n = f.n();
    if n == 0 || f.ncf_distance() != 1 {
        return Err(Error::NotUnitDistance {
            table: f.format(TableFormat::default_for(n)),
        });
    }
    let mut one_sided = 0u64;
    let mut both = 0u64;
    let mut any = 0u64;
    let mut distinct = BTreeSet::new();
    for g in BooleanFunction::all(n)? {
        for (side, h) in [f.concat(&g)?, g.concat(f)?].into_iter().enumerate() {
            let ws = oracle_witnesses(&h);
            if !ws.is_empty() {
                any += 1;
            }
            if ws.iter().any(|w| w.variable <= n) {
                both += 1;
                distinct.insert(h);
                if side == 0 {
                    one_sided += 1;
                }
            }
        }
    }
    Ok(UnitDistanceCount {
        n,
        formula_value: unit_distance_formula(n)?,
        bruteforce_value: both,
        one_sided,
        distinct_functions: distinct.len() as u64,
        any_variable: any,
        interpretation: "concatenation events fg and gf over all g, canalizing in one of \
                         the original variables"
            .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> BooleanFunction {
        BooleanFunction::parse_auto(text).unwrap()
    }

    #[test]
    fn two_variable_class_is_the_listed_fourteen() {
        let listed: BTreeSet<BooleanFunction> = [
            "1100", "1101", "1110", "1111", "0000", "0001", "0010", "0011", "0111", "1011", "0100",
            "0101", "1000", "1010",
        ]
        .iter()
        .map(|s| f(s))
        .collect();
        assert_eq!(listed.len(), 14);
        assert_eq!(enumerate_canalizing(2).unwrap(), listed);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(enumerate_canalizing(3).unwrap().len(), 120);
        assert!(enumerate_canalizing(5).is_err());
    }

    #[test]
    fn generation_from_two() {
        let report = generate_canalizing_next(&enumerate_canalizing(2).unwrap()).unwrap();
        assert_eq!(report.produced, enumerate_canalizing(3).unwrap());
        assert_eq!(report.budget, 132);
        assert!(report.within_budget());
        // 12 non-constant sources, each pairs with 10 others
        assert_eq!(report.detector_invocations, 120);
        assert_eq!(report.tallies.diagonal, 12);
        assert_eq!(report.tallies.complement_skipped, 12);
        assert_eq!(
            report.tallies.noncanalizing_pairs_skipped,
            2 * 2 + 2 * 2 * 12
        );
    }

    #[test]
    fn constants_only_source() {
        let source: BTreeSet<_> = [
            BooleanFunction::zero(2).unwrap(),
            BooleanFunction::one(2).unwrap(),
        ]
        .into_iter()
        .collect();
        let report = generate_canalizing_next(&source).unwrap();
        assert!(report.produced.contains(&f("00001111")));
        assert_eq!(report.detector_invocations, 0);
    }

    #[test]
    fn generation_rejects_bad_sources() {
        let bad: BTreeSet<_> = [f("0110")].into_iter().collect();
        assert!(matches!(
            generate_canalizing_next(&bad),
            Err(Error::NonCanalizingSource { .. })
        ));
        assert_eq!(
            generate_canalizing_next(&BTreeSet::new()),
            Err(Error::EmptySource)
        );
        let mixed: BTreeSet<_> = [f("0111"), f("01")].into_iter().collect();
        assert!(matches!(
            generate_canalizing_next(&mixed),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn formula_by_substitution() {
        assert_eq!(unit_distance_formula(1).unwrap(), 4);
        assert_eq!(unit_distance_formula(2).unwrap(), 12);
        assert_eq!(unit_distance_formula(3).unwrap(), 76);
        assert!(unit_distance_formula(0).is_err());
    }

    #[test]
    fn bruteforce_two_variables() {
        let count = unit_distance_bruteforce(&f("0001")).unwrap();
        assert_eq!(count.one_sided, 6);
        assert_eq!(count.bruteforce_value, 12);
        assert_eq!(count.distinct_functions, 11);
        assert_eq!(count.any_variable, 14);
        assert!(count.agrees());

        let comp = unit_distance_bruteforce(&f("1110")).unwrap();
        assert_eq!(comp.bruteforce_value, count.bruteforce_value);
        assert_eq!(comp.one_sided, count.one_sided);

        assert!(unit_distance_bruteforce(&f("0110")).is_err());
    }
}

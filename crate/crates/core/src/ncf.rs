//! Nested canalizing functions: canonical layer decomposition, generation by
//! inserting canalizing variables, and the census matrix by starting variable
//! and distance to the nearer constant.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::witness::{first_witness, CanalizingWitness};

/// One peeled layer: `x_variable = input` forces `output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanalizingLayer {
    /// Index in the original function.
    pub variable: usize,
    pub input: bool,
    pub output: bool,
}

impl std::fmt::Display for CanalizingLayer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(x{}, {}, {})",
            self.variable, self.input as u8, self.output as u8
        )
    }
}

/// Result of peeling canonical layers off a function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Peeled {
    pub layers: Vec<CanalizingLayer>,
    /// What is left after the last layer, over `remaining` (ascending
    /// original indices). Empty when every variable was peeled.
    pub residual: BooleanFunction,
    pub remaining: Vec<usize>,
}

/// Peels layers while the residual is non-constant and canalizing. At each
/// step the smallest-index canalizing variable of the residual is taken. Only
/// a one-variable residual canalizes on both inputs; there the input whose
/// output repeats the previous layer's output wins, and input 0 if there is
/// no previous layer.
pub(crate) fn peel(f: &BooleanFunction) -> Peeled {
    let mut residual = *f;
    let mut remaining: Vec<usize> = (1..=f.n()).collect();
    let mut layers: Vec<CanalizingLayer> = Vec::new();
    while !residual.is_constant() {
        let Some(mut w) = first_witness(&residual) else {
            break;
        };
        // A one-variable residual canalizes on both inputs; keep the previous
        // layer's output so the last two layers read alike.
        if residual.n() == 1 {
            if let Some(prev) = layers.last() {
                if w.output != prev.output {
                    w = CanalizingWitness::new(1, !w.input, !w.output);
                }
            }
        }
        layers.push(CanalizingLayer {
            variable: remaining[w.variable - 1],
            input: w.input,
            output: w.output,
        });
        residual = residual.restrict_unchecked(w.variable, !w.input);
        remaining.remove(w.variable - 1);
    }
    Peeled {
        layers,
        residual,
        remaining,
    }
}

/// Evaluates a layered form: the first layer whose variable hits its input
/// decides, otherwise `tail` is consulted.
pub(crate) fn evaluate_layers(
    layers: &[CanalizingLayer],
    t: usize,
    tail: impl FnOnce() -> bool,
) -> bool {
    for layer in layers {
        if ((t >> (layer.variable - 1)) & 1 == 1) == layer.input {
            return layer.output;
        }
    }
    tail()
}

/// Canonical decomposition of a nested canalizing function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcfDecomposition {
    pub layers: Vec<CanalizingLayer>,
    /// Output when no layer fires, the complement of the last layer's output.
    pub final_value: bool,
}

impl NcfDecomposition {
    pub fn n(&self) -> usize {
        self.layers.len()
    }

    /// Variable of the first layer.
    pub fn starting_variable(&self) -> usize {
        self.layers[0].variable
    }

    /// Rebuilds the truth table from the layers.
    pub fn reconstruct(&self) -> BooleanFunction {
        let n = self.n();
        let bits = (0..1usize << n).fold(0u64, |acc, t| {
            acc | ((evaluate_layers(&self.layers, t, || self.final_value) as u64) << t)
        });
        BooleanFunction::from_bits_truncate(n, bits)
    }
}

/// Returns the canonical decomposition if `f` is nested canalizing in all of
/// its `n` variables.
pub fn ncf_decompose(f: &BooleanFunction) -> Option<NcfDecomposition> {
    if f.n() == 0 {
        return None;
    }
    let peeled = peel(f);
    // Peeling a one-variable non-constant residual leaves a constant on zero
    // variables; any earlier stop means a constant or non-canalizing tail.
    if peeled.layers.len() != f.n() {
        return None;
    }
    let last = peeled.layers[f.n() - 1];
    debug_assert_eq!(peeled.residual.constant_value(), Some(!last.output));
    Some(NcfDecomposition {
        final_value: !last.output,
        layers: peeled.layers,
    })
}

pub fn is_ncf(f: &BooleanFunction) -> bool {
    ncf_decompose(f).is_some()
}

/// Every NCF on `n` variables, built by inserting a canalizing variable at
/// every position with every `(input, output)` pair into each NCF on one
/// fewer variable, starting from `{x_1, ¬x_1}`.
pub fn generate_ncfs(n: usize) -> Result<BTreeSet<BooleanFunction>> {
    if n == 0 {
        return Err(Error::TooFewVariables { n, min: 1 });
    }
    if n > 5 {
        return Err(Error::EnumerationTooLarge { n, max: 5 });
    }
    let x1 = BooleanFunction::variable_pattern(1, 1)?;
    let mut level: BTreeSet<BooleanFunction> = [x1, x1.complement()].into_iter().collect();
    for m in 1..n {
        let prev: Vec<BooleanFunction> = level.into_iter().collect();
        level = prev
            .par_iter()
            .map(|f| {
                let mut out = Vec::with_capacity(4 * (m + 1));
                for k in 1..=m + 1 {
                    for a in [false, true] {
                        for b in [false, true] {
                            out.push(
                                f.insert_canalizing_variable(k, a, b)
                                    .expect("position in range"),
                            );
                        }
                    }
                }
                out
            })
            .flatten()
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
    }
    Ok(level)
}

/// The recursively defined census matrix: rows are starting variables,
/// column `j` (1-based) is distance `2j - 1` to the nearer constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcfCensusMatrix {
    pub n: usize,
    pub cells: Vec<Vec<u64>>,
}

impl NcfCensusMatrix {
    /// Total NCF count, four times the cell sum.
    pub fn ncf_count(&self) -> u64 {
        4 * self.cells.iter().flatten().sum::<u64>()
    }

    pub fn columns(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    /// `M[i][j]`, both 1-based.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.cells[i - 1][j - 1]
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        self.cells.iter().map(|row| row[j - 1]).sum()
    }
}

/// Largest `n` for which [`ncf_matrix`] is evaluated.
pub const MATRIX_MAX_N: usize = 12;

/// Evaluates the matrix recursion from the two-variable base `(2, 0)`.
pub fn ncf_matrix(n: usize) -> Result<NcfCensusMatrix> {
    if n < 2 {
        return Err(Error::TooFewVariables { n, min: 2 });
    }
    if n > MATRIX_MAX_N {
        return Err(Error::UnsupportedVariableCount {
            n,
            max: MATRIX_MAX_N,
        });
    }
    let mut cells = vec![vec![2u64], vec![0u64]];
    for m in 3..=n {
        let cols = 1usize << (m - 2);
        let half = cols / 2;
        let mut next = vec![vec![0u64; cols]; m];
        for j in 0..half {
            // rows i < m: twice the tail sum of the previous column over
            // rows i..m-1; the last row stays zero
            let mut tail = 0u64;
            for i in (0..m - 1).rev() {
                tail += cells[i][j];
                next[i][j] = 2 * tail;
            }
        }
        for j in half..cols {
            let mirrored = next[0][cols - 1 - j];
            for row in next.iter_mut() {
                row[j] = mirrored;
            }
        }
        cells = next;
    }
    Ok(NcfCensusMatrix { n, cells })
}

/// Exhaustive NCF tally by starting variable and distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcfCensus {
    pub n: usize,
    /// `cells[i-1][j-1]` counts NCFs starting at `x_i` with distance `2j - 1`.
    pub cells: Vec<Vec<u64>>,
    /// NCFs at an even distance; none are expected.
    pub even_distance: u64,
}

impl NcfCensus {
    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum::<u64>() + self.even_distance
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        self.cells.iter().map(|row| row[j - 1]).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.cells[i - 1][j - 1]
    }
}

/// Decomposes every function on `2 <= n <= 4` variables and tallies the NCFs.
pub fn ncf_census(n: usize) -> Result<NcfCensus> {
    if n < 2 {
        return Err(Error::TooFewVariables { n, min: 2 });
    }
    let all: Vec<BooleanFunction> = BooleanFunction::all(n)?.collect();
    let found: Vec<(usize, u32)> = all
        .par_iter()
        .filter_map(|f| ncf_decompose(f).map(|d| (d.starting_variable(), f.ncf_distance())))
        .collect();
    let cols = 1usize << (n - 2);
    let mut cells = vec![vec![0u64; cols]; n];
    let mut even_distance = 0;
    for (i, distance) in found {
        if distance % 2 == 0 {
            even_distance += 1;
        } else {
            cells[i - 1][(distance as usize).div_ceil(2) - 1] += 1;
        }
    }
    Ok(NcfCensus {
        n,
        cells,
        even_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> BooleanFunction {
        BooleanFunction::parse_auto(text).unwrap()
    }

    fn layer(v: usize, a: u8, b: u8) -> CanalizingLayer {
        CanalizingLayer {
            variable: v,
            input: a == 1,
            output: b == 1,
        }
    }

    #[test]
    fn decompose_or() {
        let d = ncf_decompose(&f("01111111")).unwrap();
        assert_eq!(
            d.layers,
            vec![layer(1, 1, 1), layer(2, 1, 1), layer(3, 1, 1)]
        );
        assert!(!d.final_value);
        assert_eq!(d.reconstruct(), f("01111111"));
    }

    #[test]
    fn decompose_rejects_xor_and_partial_functions() {
        assert!(ncf_decompose(&f("0110")).is_none());
        // x_1 alone on two variables
        assert!(ncf_decompose(&f("0101")).is_none());
        assert!(ncf_decompose(&f("0000")).is_none());
    }

    #[test]
    fn decompose_implication() {
        let d = ncf_decompose(&f("1011")).unwrap();
        assert_eq!(d.layers, vec![layer(1, 0, 1), layer(2, 1, 1)]);
    }

    #[test]
    fn one_variable_ncfs() {
        let d = ncf_decompose(&f("01")).unwrap();
        assert_eq!(d.layers, vec![layer(1, 0, 0)]);
        assert!(d.final_value);
        assert_eq!(generate_ncfs(1).unwrap().len(), 2);
    }

    #[test]
    fn matrix_values() {
        let m2 = ncf_matrix(2).unwrap();
        assert_eq!(m2.cells, vec![vec![2], vec![0]]);
        assert_eq!(m2.ncf_count(), 8);
        let m3 = ncf_matrix(3).unwrap();
        assert_eq!(m3.cells, vec![vec![4, 4], vec![0, 4], vec![0, 4]]);
        assert_eq!(m3.ncf_count(), 64);
        let m4 = ncf_matrix(4).unwrap();
        assert_eq!(
            m4.cells,
            vec![
                vec![8, 24, 24, 8],
                vec![0, 16, 24, 8],
                vec![0, 8, 24, 8],
                vec![0, 0, 24, 8]
            ]
        );
        assert_eq!(m4.ncf_count(), 736);
        assert!(ncf_matrix(1).is_err());
    }

    #[test]
    fn matrix_extends_to_known_counts() {
        assert_eq!(ncf_matrix(5).unwrap().ncf_count(), 10_624);
        assert_eq!(ncf_matrix(6).unwrap().ncf_count(), 183_936);
    }

    #[test]
    fn census_small() {
        let c2 = ncf_census(2).unwrap();
        assert_eq!(c2.cells, vec![vec![8], vec![0]]);
        let c3 = ncf_census(3).unwrap();
        assert_eq!(c3.total(), 64);
        assert_eq!(c3.get(1, 1), 16);
        assert_eq!(c3.get(2, 1), 0);
        assert_eq!(c3.get(3, 1), 0);
    }

    #[test]
    fn generated_counts() {
        assert_eq!(generate_ncfs(2).unwrap().len(), 8);
        assert_eq!(generate_ncfs(3).unwrap().len(), 64);
        assert!(generate_ncfs(6).is_err());
    }
}

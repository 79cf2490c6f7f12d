//! Gray-ordered Karnaugh maps and the reflective-halves canalization test.
//!
//! Rows are labelled by the high variables `x_n .. x_{⌊n/2⌋+1}` (outermost
//! first) and columns by `x_{⌊n/2⌋} .. x_1`. Both axes use the reflected Gray
//! code, so splitting a block into its top half and its bottom half read in
//! reverse lines up cells that agree on every inner variable.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::witness::CanalizingWitness;

#[inline]
pub fn gray(r: usize) -> usize {
    r ^ (r >> 1)
}

/// Karnaugh map of a function on `n >= 2` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KMap {
    n: usize,
    row_bits: usize,
    col_bits: usize,
    /// Row-major; each row is a bitmask over columns (bit `c` = column `c`).
    rows: Vec<u64>,
}

impl KMap {
    pub fn build(f: &BooleanFunction) -> Result<Self> {
        let n = f.n();
        if n < 2 {
            return Err(Error::TooFewVariables { n, min: 2 });
        }
        let col_bits = n / 2;
        let row_bits = n - col_bits;
        let width = 1usize << col_bits;
        let rows = (0..1usize << row_bits)
            .map(|r| {
                let high = gray(r) << col_bits;
                (0..width).fold(0u64, |acc, c| acc | ((f.get(high | gray(c)) as u64) << c))
            })
            .collect();
        Ok(Self {
            n,
            row_bits,
            col_bits,
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_count(&self) -> usize {
        1 << self.row_bits
    }

    pub fn col_count(&self) -> usize {
        1 << self.col_bits
    }

    pub fn cell(&self, r: usize, c: usize) -> bool {
        (self.rows[r] >> c) & 1 == 1
    }

    /// Row variables, outermost first.
    pub fn row_vars(&self) -> Vec<usize> {
        (self.col_bits + 1..=self.n).rev().collect()
    }

    /// Column variables, outermost first.
    pub fn col_vars(&self) -> Vec<usize> {
        (1..=self.col_bits).rev().collect()
    }

    /// Truth index of a cell.
    pub fn truth_index(&self, r: usize, c: usize) -> usize {
        (gray(r) << self.col_bits) | gray(c)
    }

    /// Each column as a bitmask over rows.
    fn columns(&self) -> Vec<u64> {
        (0..self.col_count())
            .map(|c| {
                self.rows
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (r, &row)| acc | (((row >> c) & 1) << r))
            })
            .collect()
    }

    /// Witnesses found by splitting rows and columns into reflected halves.
    pub fn witnesses(&self) -> BTreeSet<CanalizingWitness> {
        let row_full = full_line(self.col_count());
        let col_full = full_line(self.row_count());
        let mut out = reflect(&self.rows, row_full, &self.row_vars());
        out.extend(reflect(&self.columns(), col_full, &self.col_vars()));
        out
    }

    /// Text grid with row labels, as the conventional K-map drawing.
    pub fn render(&self) -> String {
        let label = |v: usize, bits: usize| format!("{:0width$b}", gray(v), width = bits);
        let mut s = String::new();
        let vars = |vs: Vec<usize>| {
            vs.iter()
                .map(|v| format!("x{v}"))
                .collect::<Vec<_>>()
                .join("")
        };
        s.push_str(&format!(
            "{} \\ {}\n",
            vars(self.row_vars()),
            vars(self.col_vars())
        ));
        s.push_str(&" ".repeat(self.row_bits + 1));
        for c in 0..self.col_count() {
            s.push_str(&format!(" {}", label(c, self.col_bits)));
        }
        s.push('\n');
        for r in 0..self.row_count() {
            s.push_str(&label(r, self.row_bits));
            s.push(' ');
            for c in 0..self.col_count() {
                s.push_str(&format!(
                    " {:>width$}",
                    self.cell(r, c) as u8,
                    width = self.col_bits
                ));
            }
            s.push('\n');
        }
        s
    }
}

fn full_line(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn uniform(lines: &[u64], full: u64) -> Option<bool> {
    if lines.iter().all(|&l| l == 0) {
        Some(false)
    } else if lines.iter().all(|&l| l == full) {
        Some(true)
    } else {
        None
    }
}

/// `lines` is a Gray-ordered block over `vars` (outermost first). The top half
/// has the outermost variable at 0; the bottom half, reversed, has it at 1 and
/// lines up with the top half on every deeper variable.
fn reflect(lines: &[u64], full: u64, vars: &[usize]) -> BTreeSet<CanalizingWitness> {
    let mut out = BTreeSet::new();
    let Some((&outer, inner)) = vars.split_first() else {
        return out;
    };
    let half = lines.len() / 2;
    let top = &lines[..half];
    let bottom_rev: Vec<u64> = lines[half..].iter().rev().copied().collect();
    if let Some(b) = uniform(top, full) {
        out.insert(CanalizingWitness::new(outer, false, b));
    }
    if let Some(b) = uniform(&bottom_rev, full) {
        out.insert(CanalizingWitness::new(outer, true, b));
    }
    if !inner.is_empty() {
        let from_top = reflect(top, full, inner);
        if !from_top.is_empty() {
            let from_bottom = reflect(&bottom_rev, full, inner);
            out.extend(from_top.intersection(&from_bottom).copied());
        }
    }
    out
}

/// Builds the Karnaugh map of `f`.
pub fn build_kmap(f: &BooleanFunction) -> Result<KMap> {
    KMap::build(f)
}

/// Canalizing witnesses found on the Karnaugh map of `f` (`n >= 2`).
pub fn kmap_witnesses(f: &BooleanFunction) -> Result<BTreeSet<CanalizingWitness>> {
    Ok(KMap::build(f)?.witnesses())
}

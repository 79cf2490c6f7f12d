//! Canalizing witnesses and the restriction-based ground truth.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::function::{slice_mask, BooleanFunction};

/// `(x_variable = input) ⇒ f = output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanalizingWitness {
    pub variable: usize,
    pub input: bool,
    pub output: bool,
}

impl CanalizingWitness {
    pub const fn new(variable: usize, input: bool, output: bool) -> Self {
        Self {
            variable,
            input,
            output,
        }
    }

    /// Checks the witness directly against the truth table.
    pub fn holds_for(&self, f: &BooleanFunction) -> bool {
        if self.variable == 0 || self.variable > f.n() {
            return false;
        }
        let mask = slice_mask(f.n(), self.variable, self.input);
        let expected = if self.output { mask } else { 0 };
        f.bits() & mask == expected
    }

    /// Same variable and input, opposite output.
    pub fn complemented(&self) -> Self {
        Self::new(self.variable, self.input, !self.output)
    }
}

impl fmt::Display for CanalizingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x{}, {}, {})",
            self.variable, self.input as u8, self.output as u8
        )
    }
}

/// Every `(i, a, b)` with `f|x_i=a ≡ b`, found by restricting and scanning.
pub fn oracle_witnesses(f: &BooleanFunction) -> BTreeSet<CanalizingWitness> {
    let mut out = BTreeSet::new();
    for i in 1..=f.n() {
        for a in [false, true] {
            if let Some(b) = f.restrict_unchecked(i, a).constant_value() {
                out.insert(CanalizingWitness::new(i, a, b));
            }
        }
    }
    out
}

/// The first witness in `(variable, input)` order: smallest variable, input 0
/// before input 1.
pub fn first_witness(f: &BooleanFunction) -> Option<CanalizingWitness> {
    let n = f.n();
    let bits = f.bits();
    for i in 1..=n {
        for a in [false, true] {
            let mask = slice_mask(n, i, a);
            match bits & mask {
                0 => return Some(CanalizingWitness::new(i, a, false)),
                m if m == mask => return Some(CanalizingWitness::new(i, a, true)),
                _ => {}
            }
        }
    }
    None
}

/// Whether some variable value forces the output. Constants count as
/// canalizing; a function on zero variables does not.
pub fn is_canalizing(f: &BooleanFunction) -> bool {
    first_witness(f).is_some()
}

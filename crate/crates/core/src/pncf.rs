//! Partially nested canalizing classification: peel canonical layers until the
//! residual is constant or stops being canalizing.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, TableFormat};
use crate::ncf::{evaluate_layers, peel, CanalizingLayer};
use crate::witness::is_canalizing;

/// What is left once peeling stops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    ConstantTail {
        value: bool,
    },
    /// The residual on the unpeeled variables, in ascending original order.
    NonCanalizingTail {
        residual: BooleanFunction,
        variables: Vec<usize>,
    },
    FullyNested,
}

impl Tail {
    pub fn kind(&self) -> TailKind {
        match self {
            Tail::ConstantTail { .. } => TailKind::Constant,
            Tail::NonCanalizingTail { .. } => TailKind::NonCanalizing,
            Tail::FullyNested => TailKind::FullyNested,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    Constant,
    NonCanalizing,
    FullyNested,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PncfClassification {
    pub n: usize,
    /// Number of peeled layers; 0 for constants.
    pub depth: usize,
    pub layers: Vec<CanalizingLayer>,
    pub tail: Tail,
}

impl PncfClassification {
    /// Depth bucket used by the census: constants are counted with depth 1.
    pub fn bucket(&self) -> usize {
        self.depth.max(1)
    }

    pub fn is_fully_nested(&self) -> bool {
        matches!(self.tail, Tail::FullyNested)
    }

    /// Rebuilds the truth table from the layers and the tail.
    pub fn reconstruct(&self) -> BooleanFunction {
        let final_value = self.layers.last().map(|l| !l.output).unwrap_or(false);
        let bits = (0..1usize << self.n).fold(0u64, |acc, t| {
            let value = evaluate_layers(&self.layers, t, || match &self.tail {
                Tail::ConstantTail { value } => *value,
                Tail::FullyNested => final_value,
                Tail::NonCanalizingTail {
                    residual,
                    variables,
                } => {
                    let local = variables
                        .iter()
                        .enumerate()
                        .fold(0usize, |acc, (p, v)| acc | (((t >> (v - 1)) & 1) << p));
                    residual.evaluate(crate::TruthIndex(local)).unwrap_or(false)
                }
            });
            acc | ((value as u64) << t)
        });
        BooleanFunction::from_bits(self.n, bits).expect("bits confined to the table")
    }
}

/// Classifies a canalizing (or constant) function by maximal canonical
/// peeling.
pub fn pncf_classify(f: &BooleanFunction) -> Result<PncfClassification> {
    if f.n() < 2 {
        return Err(Error::TooFewVariables { n: f.n(), min: 2 });
    }
    if !is_canalizing(f) {
        return Err(Error::NotCanalizing {
            table: f.format(TableFormat::default_for(f.n())),
        });
    }
    let peeled = peel(f);
    let depth = peeled.layers.len();
    let tail = if depth == f.n() {
        Tail::FullyNested
    } else if let Some(value) = peeled.residual.constant_value() {
        Tail::ConstantTail { value }
    } else {
        Tail::NonCanalizingTail {
            residual: peeled.residual,
            variables: peeled.remaining,
        }
    };
    Ok(PncfClassification {
        n: f.n(),
        depth,
        layers: peeled.layers,
        tail,
    })
}

/// Counts per depth bucket and tail kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthTally {
    pub constant_tail: u64,
    pub noncanalizing_tail: u64,
}

impl DepthTally {
    pub fn total(&self) -> u64 {
        self.constant_tail + self.noncanalizing_tail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PncfCensus {
    pub n: usize,
    /// Depth bucket `1..n` to tallies.
    pub depths: BTreeMap<usize, DepthTally>,
    pub fully_nested: u64,
}

impl PncfCensus {
    pub fn depth(&self, d: usize) -> DepthTally {
        self.depths.get(&d).copied().unwrap_or_default()
    }

    pub fn partially_nested(&self) -> u64 {
        self.depths.values().map(DepthTally::total).sum()
    }

    pub fn total(&self) -> u64 {
        self.partially_nested() + self.fully_nested
    }
}

/// Classifies every canalizing function on `2 <= n <= 4` variables.
pub fn pncf_census(n: usize) -> Result<PncfCensus> {
    if n < 2 {
        return Err(Error::TooFewVariables { n, min: 2 });
    }
    let all: Vec<BooleanFunction> = BooleanFunction::all(n)?.collect();
    let classes: Vec<(usize, TailKind)> = all
        .par_iter()
        .filter(|f| is_canalizing(f))
        .map(|f| {
            let c = pncf_classify(f).expect("filtered to canalizing");
            (c.bucket(), c.tail.kind())
        })
        .collect();
    let mut census = PncfCensus {
        n,
        depths: (1..n).map(|d| (d, DepthTally::default())).collect(),
        fully_nested: 0,
    };
    for (bucket, kind) in classes {
        match kind {
            TailKind::FullyNested => census.fully_nested += 1,
            TailKind::Constant => census.depths.entry(bucket).or_default().constant_tail += 1,
            TailKind::NonCanalizing => {
                census.depths.entry(bucket).or_default().noncanalizing_tail += 1
            }
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> BooleanFunction {
        BooleanFunction::parse_auto(text).unwrap()
    }

    #[test]
    fn xor_behind_a_constant_half() {
        let h = f("01101001")
            .concat(&BooleanFunction::one(3).unwrap())
            .unwrap();
        assert_eq!(h, f("0110100111111111"));
        let c = pncf_classify(&h).unwrap();
        assert_eq!(c.depth, 1);
        assert_eq!(
            c.layers,
            vec![CanalizingLayer {
                variable: 4,
                input: true,
                output: true
            }]
        );
        assert_eq!(
            c.tail,
            Tail::NonCanalizingTail {
                residual: f("01101001"),
                variables: vec![1, 2, 3]
            }
        );
        assert_eq!(c.reconstruct(), h);
    }

    #[test]
    fn and_is_fully_nested() {
        let c = pncf_classify(&f("0001")).unwrap();
        assert_eq!(c.depth, 2);
        assert!(c.is_fully_nested());
    }

    #[test]
    fn projection_has_constant_tail() {
        let x1 = BooleanFunction::variable_pattern(1, 4).unwrap();
        let c = pncf_classify(&x1).unwrap();
        assert_eq!(c.depth, 1);
        assert_eq!(c.tail, Tail::ConstantTail { value: true });
        assert_eq!(c.reconstruct(), x1);
    }

    #[test]
    fn constants_go_to_bucket_one() {
        let c = pncf_classify(&BooleanFunction::zero(4).unwrap()).unwrap();
        assert_eq!(c.depth, 0);
        assert_eq!(c.bucket(), 1);
        assert_eq!(c.tail, Tail::ConstantTail { value: false });
        assert!(c.reconstruct().is_zero());
    }

    #[test]
    fn rejects_non_canalizing() {
        assert!(matches!(
            pncf_classify(&f("0110")),
            Err(Error::NotCanalizing { .. })
        ));
        assert!(pncf_classify(&f("01")).is_err());
    }

    #[test]
    fn three_variable_census() {
        let c = pncf_census(3).unwrap();
        assert_eq!(c.total(), 120);
        assert_eq!(c.fully_nested, 64);
        assert!(pncf_census(5).is_err());
    }
}

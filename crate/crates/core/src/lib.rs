//! Analysis and generation of canalizing Boolean functions.
//!
//! Functions on up to six variables are stored as truth tables
//! ([`BooleanFunction`]). Variable `x_i` reads bit `i - 1` of the truth index,
//! so `x_1` toggles fastest.
//!
//! - [`kmap`] decides canalization on a Gray-ordered Karnaugh map by
//!   recursively comparing reflected halves; [`witness`] holds the
//!   restriction-based ground truth it is checked against.
//! - [`generate`] builds the canalizing class on `n + 1` variables from the
//!   class on `n` variables by concatenation.
//! - [`ncf`] decomposes nested canalizing functions into layers, generates
//!   them by variable insertion and evaluates the census matrix recursion.
//! - [`pncf`] classifies canalizing functions by nesting depth.
//! - [`report`] and [`verify`] bundle these into reports for the CLI.

pub mod error;
pub mod function;
pub mod generate;
pub mod kmap;
pub mod ncf;
pub mod pncf;
pub mod report;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use function::{BooleanFunction, TableFormat, TruthIndex, MAX_VARS};
pub use generate::{
    detector_budget, enumerate_canalizing, generate_canalizing_next, unit_distance_bruteforce,
    unit_distance_formula, CategoryTallies, GenerationReport, UnitDistanceCount,
};
pub use kmap::{build_kmap, kmap_witnesses, KMap};
pub use ncf::{
    generate_ncfs, is_ncf, ncf_census, ncf_decompose, ncf_matrix, CanalizingLayer, NcfCensus,
    NcfCensusMatrix, NcfDecomposition,
};
pub use pncf::{
    pncf_census, pncf_classify, DepthTally, PncfCensus, PncfClassification, Tail, TailKind,
};
pub use report::{classify, enumerate, Census, ClassificationReport};
pub use verify::{verification_suite, Check, VerificationSuiteResult, VerifyOptions};
pub use witness::{first_witness, is_canalizing, oracle_witnesses, CanalizingWitness};

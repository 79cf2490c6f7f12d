//! Single-function reports and exhaustive class counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, TableFormat};
use crate::generate::enumerate_canalizing;
use crate::kmap::kmap_witnesses;
use crate::ncf::{ncf_census, ncf_decompose, NcfDecomposition};
use crate::pncf::{pncf_census, pncf_classify, PncfCensus, TailKind};
use crate::witness::{oracle_witnesses, CanalizingWitness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PncfSummary {
    pub depth: usize,
    /// Census bucket; equals `depth` except for constants, which go to 1.
    pub bucket: usize,
    pub tail: TailKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub input: String,
    pub n: usize,
    pub function: BooleanFunction,
    pub canalizing: bool,
    pub witnesses: Vec<CanalizingWitness>,
    /// `None` below two variables, where no map is drawn.
    pub kmap_witnesses: Option<Vec<CanalizingWitness>>,
    pub detectors_agree: bool,
    pub ncf: Option<NcfDecomposition>,
    pub pncf: Option<PncfSummary>,
    pub ncf_distance: u32,
    pub essential_variables: Vec<usize>,
}

/// Parses `text` (with `n` given or inferred from its length) and runs every
/// classifier on it.
pub fn classify(text: &str, n: Option<usize>) -> Result<ClassificationReport> {
    let f = match n {
        Some(n) => BooleanFunction::parse(text, n)?,
        None => BooleanFunction::parse_auto(text)?,
    };
    Ok(classify_function(&f, text.trim()))
}

pub fn classify_function(f: &BooleanFunction, input: &str) -> ClassificationReport {
    let witnesses: Vec<_> = oracle_witnesses(f).into_iter().collect();
    let kmap = (f.n() >= 2)
        .then(|| kmap_witnesses(f).map(|ws| ws.into_iter().collect::<Vec<_>>()))
        .transpose()
        .expect("n >= 2 checked");
    let detectors_agree = kmap.as_ref().is_none_or(|k| *k == witnesses);
    let canalizing = !witnesses.is_empty();
    let pncf = (canalizing && f.n() >= 2).then(|| {
        let c = pncf_classify(f).expect("canalizing, n >= 2");
        PncfSummary {
            depth: c.depth,
            bucket: c.bucket(),
            tail: c.tail.kind(),
        }
    });
    ClassificationReport {
        input: input.to_string(),
        n: f.n(),
        function: *f,
        canalizing,
        witnesses,
        kmap_witnesses: kmap,
        detectors_agree,
        ncf: ncf_decompose(f),
        pncf,
        ncf_distance: f.ncf_distance(),
        essential_variables: f.essential_variables(),
    }
}

impl ClassificationReport {
    /// Aligned plain-text rendering.
    pub fn to_table(&self) -> String {
        let join = |ws: &[CanalizingWitness]| {
            if ws.is_empty() {
                "-".to_string()
            } else {
                ws.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        let mut rows: Vec<(&str, String)> = vec![
            ("input", self.input.clone()),
            ("n", self.n.to_string()),
            ("binary", self.function.format(TableFormat::Binary)),
        ];
        if self.n >= 2 {
            rows.push(("hex", self.function.format(TableFormat::Hex)));
        }
        rows.push(("canalizing", yes_no(self.canalizing)));
        rows.push(("witnesses", join(&self.witnesses)));
        if let Some(k) = &self.kmap_witnesses {
            rows.push(("kmap witnesses", join(k)));
        }
        rows.push(("detectors agree", yes_no(self.detectors_agree)));
        rows.push((
            "ncf",
            match &self.ncf {
                Some(d) => {
                    let layers: Vec<_> = d.layers.iter().map(ToString::to_string).collect();
                    format!("{} else {}", layers.join(" "), d.final_value as u8)
                }
                None => "no".to_string(),
            },
        ));
        rows.push((
            "pncf",
            match &self.pncf {
                Some(p) => format!("depth {} (bucket {}), {:?} tail", p.depth, p.bucket, p.tail),
                None => "-".to_string(),
            },
        ));
        rows.push(("ncf distance", self.ncf_distance.to_string()));
        rows.push((
            "essential",
            self.essential_variables
                .iter()
                .map(|v| format!("x{v}"))
                .collect::<Vec<_>>()
                .join(" "),
        ));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::from("# variables x1..xn, x1 toggles fastest in the truth table\n");
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Class sizes over every function on `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub total: u64,
    pub canalizing: u64,
    pub non_canalizing: u64,
    pub ncf: u64,
    /// `None` for `n = 1`.
    pub pncf: Option<PncfCensus>,
}

/// Exhaustive counts for `1 <= n <= 4`.
pub fn enumerate(n: usize) -> Result<Census> {
    if n == 0 {
        return Err(Error::TooFewVariables { n, min: 1 });
    }
    let canalizing = enumerate_canalizing(n)?.len() as u64;
    let total = 1u64 << (1u64 << n);
    let (ncf, pncf) = if n >= 2 {
        (ncf_census(n)?.total(), Some(pncf_census(n)?))
    } else {
        // x_1 and its complement
        (2, None)
    };
    Ok(Census {
        n,
        total,
        canalizing,
        non_canalizing: total - canalizing,
        ncf,
        pncf,
    })
}

impl Census {
    pub fn to_table(&self) -> String {
        let mut rows = vec![
            ("functions".to_string(), self.total),
            ("canalizing".to_string(), self.canalizing),
            ("non-canalizing".to_string(), self.non_canalizing),
            ("ncf".to_string(), self.ncf),
        ];
        if let Some(p) = &self.pncf {
            for (d, t) in &p.depths {
                rows.push((format!("pncf depth {d} constant tail"), t.constant_tail));
                rows.push((
                    format!("pncf depth {d} non-canalizing tail"),
                    t.noncanalizing_tail,
                ));
                rows.push((format!("pncf depth {d}"), t.total()));
            }
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("# n = {}\n", self.n);
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v:>6}\n"));
        }
        out
    }
}

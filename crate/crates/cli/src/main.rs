//! `canalize`: classify, count and generate canalizing Boolean functions.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use canalizing::{
    classify, enumerate, enumerate_canalizing, generate_canalizing_next, ncf_matrix, pncf_census,
    verification_suite, BooleanFunction, CategoryTallies, TableFormat, VerifyOptions,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const CONVENTION: &str = "# variables x1..xn, x1 toggles fastest in the truth table";

#[derive(Parser, Debug)]
#[command(author, version, about = "Canalizing Boolean function analysis", long_about = None)]
struct Args {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads (0 uses all cores); output does not depend on it
    #[arg(long, default_value_t = 0, global = true)]
    parallel: usize,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one function given as a binary or 0x-hex truth table
    Classify {
        /// Truth table; character p is f(p)
        function: String,
        /// Variable count (inferred from the table length if omitted)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Count canalizing, nested and partially nested functions on n <= 4 variables
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Recompute every reference count and property; exit 1 on any failure
    VerifyPaper {
        /// Random functions per sampled variable count (n = 5 and 6)
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        /// Replace a check's expected value (NAME=VALUE); exercises the failure path
        #[arg(long, value_name = "NAME=VALUE", hide = true)]
        expect: Vec<String>,
    },
    /// Build the canalizing class on k + 1 variables from the class on k
    Generate {
        #[arg(long)]
        from_n: usize,
        /// Also emit the produced set, one hex table per line
        #[arg(long)]
        list: bool,
    },
    /// Print the NCF census matrix and the total NCF count
    NcfMatrix {
        #[arg(long)]
        n: usize,
    },
    /// Tally canalizing functions by nesting depth
    PncfCensus {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Insert a canalizing variable into a function
    Merge {
        function: String,
        #[arg(long)]
        n: Option<usize>,
        /// Position k of the new variable in the result (1..=n+1)
        #[arg(
            long,
            conflicts_with = "block_var",
            required_unless_present = "block_var"
        )]
        position: Option<usize>,
        /// Alternative parametrization: block size 2^(n-i+1), i.e. k = n + 2 - i
        #[arg(long)]
        block_var: Option<usize>,
        /// Canalizing input value (0 or 1)
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        input: u8,
        /// Canalized output value (0 or 1)
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        output: u8,
    },
}

/// Output text plus the exit status it implies.
struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            failed: false,
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn table_text(f: &BooleanFunction) -> String {
    f.format(TableFormat::default_for(f.n()))
}

#[derive(Serialize)]
struct GenerateSummary {
    n_source: usize,
    source_size: usize,
    produced_count: usize,
    detector_invocations: u64,
    budget: u64,
    within_budget: bool,
    tallies: CategoryTallies,
    #[serde(skip_serializing_if = "Option::is_none")]
    produced: Option<Vec<String>>,
}

#[derive(Serialize)]
struct MatrixSummary {
    n: usize,
    rows: Vec<Vec<u64>>,
    /// Distance to the nearer constant for each column.
    column_distances: Vec<usize>,
    ncf_count: u64,
}

#[derive(Serialize)]
struct MergeSummary {
    function: BooleanFunction,
    position: usize,
    input: u8,
    output: u8,
    result: BooleanFunction,
}

fn grid(rows: &[Vec<u64>], header: &[String]) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .chain(header.iter().map(String::len))
        .max()
        .unwrap_or(1);
    let mut s = format!("{:>4}", "");
    for h in header {
        let _ = write!(s, " {h:>width$}");
    }
    s.push('\n');
    for (i, row) in rows.iter().enumerate() {
        let _ = write!(s, "{:>4}", format!("x{}", i + 1));
        for v in row {
            let _ = write!(s, " {v:>width$}");
        }
        s.push('\n');
    }
    s
}

fn run(args: &Args) -> Result<Outcome, canalizing::Error> {
    let table = args.format == Format::Table;
    match &args.command {
        Command::Classify { function, n } => {
            let report = classify(function, *n)?;
            let text = if table {
                report.to_table()
            } else {
                json(&report)
            };
            Ok(Outcome {
                text,
                failed: !report.detectors_agree,
            })
        }
        Command::Enumerate { n } => {
            let census = enumerate(*n)?;
            Ok(Outcome::ok(if table {
                census.to_table()
            } else {
                json(&census)
            }))
        }
        Command::VerifyPaper {
            samples,
            seed,
            expect,
        } => {
            let mut result = verification_suite(VerifyOptions {
                samples: *samples,
                seed: *seed,
            })?;
            for spec in expect {
                let (name, value) = spec.split_once('=').unwrap_or((spec, ""));
                if !result.override_expected(name, value) {
                    return Err(canalizing::Error::UnknownCheck {
                        name: name.to_string(),
                    });
                }
            }
            let text = if table {
                format!("{result}\n")
            } else {
                json(&result)
            };
            Ok(Outcome {
                text,
                failed: !result.passed(),
            })
        }
        Command::Generate { from_n, list } => {
            let source = enumerate_canalizing(*from_n)?;
            let report = generate_canalizing_next(&source)?;
            let produced: Vec<String> = report.produced.iter().map(table_text).collect();
            let summary = GenerateSummary {
                n_source: report.n_source,
                source_size: source.len(),
                produced_count: report.produced.len(),
                detector_invocations: report.detector_invocations,
                budget: report.budget,
                within_budget: report.within_budget(),
                tallies: report.tallies,
                produced: (*list && !table).then(|| produced.clone()),
            };
            let text = if table {
                let t = &summary.tallies;
                let mut s = format!(
                    "{CONVENTION}\n\
                     source n                  {}\n\
                     source size               {}\n\
                     produced                  {}\n\
                     detector invocations      {}\n\
                     budget (X-2)^2-(X-2)      {}\n\
                     within budget             {}\n\
                     constant half, outside    {}\n\
                     constant half, inside     {}\n\
                     diagonal ff               {}\n\
                     complement ff' skipped    {}\n\
                     non-canalizing skipped    {}\n\
                     detector positives        {}\n",
                    summary.n_source,
                    summary.source_size,
                    summary.produced_count,
                    summary.detector_invocations,
                    summary.budget,
                    summary.within_budget,
                    t.noncanalizing_with_constant,
                    t.canalizing_with_constant,
                    t.diagonal,
                    t.complement_skipped,
                    t.noncanalizing_pairs_skipped,
                    t.detector_positives,
                );
                if *list {
                    for p in &produced {
                        s.push_str(p);
                        s.push('\n');
                    }
                }
                s
            } else {
                json(&summary)
            };
            Ok(Outcome {
                text,
                failed: !summary.within_budget,
            })
        }
        Command::NcfMatrix { n } => {
            let m = ncf_matrix(*n)?;
            let summary = MatrixSummary {
                n: m.n,
                column_distances: (1..=m.columns()).map(|j| 2 * j - 1).collect(),
                ncf_count: m.ncf_count(),
                rows: m.cells,
            };
            let text = if table {
                let header: Vec<String> = summary
                    .column_distances
                    .iter()
                    .map(|d| format!("d{d}"))
                    .collect();
                format!(
                    "# M_{} (rows: starting variable, columns: distance to nearer constant)\n{}N_c = {}\n",
                    summary.n,
                    grid(&summary.rows, &header),
                    summary.ncf_count
                )
            } else {
                json(&summary)
            };
            Ok(Outcome::ok(text))
        }
        Command::PncfCensus { n } => {
            let census = pncf_census(*n)?;
            let text = if table {
                let mut s = format!(
                    "# n = {}\n{:<8} {:>9} {:>15} {:>7}\n",
                    census.n, "depth", "constant", "non-canalizing", "total"
                );
                for (d, t) in &census.depths {
                    let _ = writeln!(
                        s,
                        "{:<8} {:>9} {:>15} {:>7}",
                        d,
                        t.constant_tail,
                        t.noncanalizing_tail,
                        t.total()
                    );
                }
                let _ = writeln!(s, "{:<8} {:>33}", "nested", census.fully_nested);
                let _ = writeln!(s, "{:<8} {:>33}", "total", census.total());
                s
            } else {
                json(&census)
            };
            Ok(Outcome::ok(text))
        }
        Command::Merge {
            function,
            n,
            position,
            block_var,
            input,
            output,
        } => {
            let f = match n {
                Some(n) => BooleanFunction::parse(function, *n)?,
                None => BooleanFunction::parse_auto(function)?,
            };
            let k =
                match (position, block_var) {
                    (Some(k), _) => *k,
                    (None, Some(i)) => (f.n() + 2).checked_sub(*i).ok_or(
                        canalizing::Error::VariableOutOfRange {
                            i: *i,
                            n: f.n() + 1,
                        },
                    )?,
                    (None, None) => unreachable!("clap requires one of them"),
                };
            let result = f.insert_canalizing_variable(k, *input == 1, *output == 1)?;
            let text = if table {
                format!("{CONVENTION}\n{}\n", table_text(&result))
            } else {
                json(&MergeSummary {
                    function: f,
                    position: k,
                    input: *input,
                    output: *output,
                    result,
                })
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallel)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match pool.install(|| run(&args)) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 reproduction
//! mismatch.

pub mod input;
pub mod report;
pub mod repro;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::charfun::{enumerate_bott, validate_characteristic, CharError, Validation};
use crate::cohomology::{build_presentation, reduce, CohomologyError, GradedF2Algebra, DEFAULT_MONOMIAL_CAP};
use crate::invariants::external::ExternalTable;
use crate::invariants::zcl::Strategy;
use crate::invariants::{bounds_from_algebra, BoundsOptions};
use input::{InputDocument, Instance};
use report::{CohomologySummary, Presentation, ReportDocument, Timing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "smallcover", version, about = "Cohomology rings and topological complexity bounds of small covers")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the characteristic function is valid.
    Validate {
        /// Input document; standard input when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Compute the cohomology ring.
    Cohomology {
        input: Option<PathBuf>,
        /// Print the monomial basis of every degree.
        #[arg(long)]
        print_basis: bool,
        /// Only report degrees up to D.
        #[arg(long, value_name = "D")]
        max_degree: Option<usize>,
        /// Refuse degrees with more than N monomials.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MONOMIAL_CAP)]
        monomial_cap: u64,
        /// Include wall-clock times in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Compute bounds for LS-category and the topological complexities.
    Bounds {
        input: Option<PathBuf>,
        #[arg(long)]
        strategy: Option<Strategy>,
        /// Per-factor exponent cap (default 2n).
        #[arg(long, value_name = "N")]
        exponent_cap: Option<usize>,
        /// Search budget in evaluated products.
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
        #[arg(long)]
        assert_rz_simply_connected: bool,
        /// Table of imported exact values replacing the built-in one.
        #[arg(long, value_name = "PATH")]
        external: Option<PathBuf>,
        #[arg(long)]
        print_basis: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Tabulate every normal-form Bott matrix over a product of simplices.
    Classify {
        /// Simplex dimensions, e.g. `1,1,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Maximum number of matrices.
        #[arg(long, value_name = "N", default_value_t = 1 << 16)]
        budget: u64,
        #[arg(long, default_value = "generators")]
        strategy: Strategy,
    },
    /// Run the reproduction suite.
    Repro {
        /// Only rows whose identifier contains PATTERN.
        #[arg(long, value_name = "PATTERN")]
        filter: Option<String>,
        /// Expected values overriding the built-in ones.
        #[arg(long, value_name = "PATH")]
        expected: Option<PathBuf>,
        /// Print the built-in expected values and exit.
        #[arg(long)]
        dump_expected: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let format = cli.format;
    match cli.command {
        Command::Validate { input } => with_input(input, stdin, err, |doc, err| cmd_validate(doc, format, out, err)),
        Command::Cohomology {
            input,
            print_basis,
            max_degree,
            monomial_cap,
            timing,
        } => with_input(input, stdin, err, |doc, _| {
            let flags = CohomologyFlags {
                print_basis,
                max_degree,
                monomial_cap,
                timing,
            };
            emit(cmd_cohomology(doc, &flags), format, out)
        }),
        Command::Bounds {
            input,
            strategy,
            exponent_cap,
            budget,
            assert_rz_simply_connected,
            external,
            print_basis,
            timing,
        } => {
            let table = match external {
                None => ExternalTable::builtin(),
                Some(path) => match std::fs::read_to_string(&path)
                    .map_err(|e| e.to_string())
                    .and_then(|t| ExternalTable::from_json(&t).map_err(|e| e.to_string()))
                {
                    Ok(t) => t,
                    Err(e) => {
                        let _ = writeln!(err, "cannot read external table {}: {e}", path.display());
                        return EXIT_INVALID;
                    }
                },
            };
            with_input(input, stdin, err, |mut doc, _| {
                if let Some(s) = strategy {
                    doc.options.strategy = s;
                }
                if exponent_cap.is_some() {
                    doc.options.exponent_cap = exponent_cap;
                }
                if let Some(b) = budget {
                    doc.options.budget = b;
                }
                doc.options.assert_rz_simply_connected |= assert_rz_simply_connected;
                let flags = CohomologyFlags {
                    print_basis,
                    max_degree: None,
                    monomial_cap: DEFAULT_MONOMIAL_CAP,
                    timing,
                };
                emit(cmd_bounds(doc, &flags, table), format, out)
            })
        }
        Command::Classify { dims, budget, strategy } => cmd_classify(&dims, budget, strategy, format, out, err),
        Command::Repro {
            filter,
            expected,
            dump_expected,
        } => {
            if dump_expected {
                let text = serde_json::to_string_pretty(&repro::Expectations::default()).expect("serializes");
                let _ = writeln!(out, "{text}");
                return EXIT_OK;
            }
            let exp = match expected {
                None => repro::Expectations::default(),
                Some(path) => match std::fs::read_to_string(&path)
                    .map_err(|e| e.to_string())
                    .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))
                {
                    Ok(e) => e,
                    Err(e) => {
                        let _ = writeln!(err, "cannot read expected values {}: {e}", path.display());
                        return EXIT_INVALID;
                    }
                },
            };
            cmd_repro(filter.as_deref(), &exp, format, out)
        }
    }
}

fn with_input(
    path: Option<PathBuf>,
    stdin: &mut dyn Read,
    err: &mut dyn Write,
    f: impl FnOnce(InputDocument, &mut dyn Write) -> i32,
) -> i32 {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map(|_| s).map_err(|e| e.to_string())
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "cannot read input: {e}");
            return EXIT_INVALID;
        }
    };
    match InputDocument::parse(&text) {
        Ok(doc) => f(doc, err),
        Err(e) => {
            let _ = writeln!(err, "{e}");
            EXIT_INVALID
        }
    }
}

fn emit((report, code): (ReportDocument, i32), format: Format, out: &mut dyn Write) -> i32 {
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let _ = out.write_all(text.as_bytes());
    code
}

fn cmd_validate(doc: InputDocument, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut report = ReportDocument::new(doc.clone());
    let code = match doc.resolve() {
        Err(e) => {
            report.error = Some(e.to_string());
            EXIT_INVALID
        }
        Ok(inst) => match validate_characteristic(&inst.polytope, &inst.lambda) {
            Ok(Validation::Valid) => {
                report.valid = true;
                EXIT_OK
            }
            Ok(Validation::Violation(s)) => {
                let names: Vec<String> = s.iter().map(|&i| format!("x{}", i + 1)).collect();
                report.error = Some(format!(
                    "facets {} meet but carry linearly dependent vectors",
                    names.join(", ")
                ));
                report.violation = Some(s);
                EXIT_INVALID
            }
            Err(e) => {
                report.error = Some(e.to_string());
                EXIT_INVALID
            }
        },
    };
    if code != EXIT_OK {
        if let Some(e) = &report.error {
            let _ = writeln!(err, "{e}");
        }
    }
    emit((report, code), format, out)
}

pub struct CohomologyFlags {
    pub print_basis: bool,
    pub max_degree: Option<usize>,
    pub monomial_cap: u64,
    pub timing: bool,
}

/// Resolves the document and computes its ring. On failure the partial
/// report and exit code are returned instead.
fn ring_for(
    doc: &InputDocument,
    flags: &CohomologyFlags,
) -> Result<(ReportDocument, Instance, GradedF2Algebra), Box<(ReportDocument, i32)>> {
    let mut report = ReportDocument::new(doc.clone());
    let fail = |mut report: ReportDocument, msg: String, code: i32| {
        report.error = Some(msg);
        Err(Box::new((report, code)))
    };
    let inst = match doc.resolve() {
        Ok(i) => i,
        Err(e) => return fail(report, e.to_string(), EXIT_INVALID),
    };
    let t = Instant::now();
    let pres = match build_presentation(&inst.polytope, &inst.lambda) {
        Ok(p) => p,
        Err(e) => return fail(report, e.to_string(), EXIT_INVALID),
    };
    report.valid = true;
    let red = match reduce(&pres) {
        Ok(r) => r,
        Err(e) => return fail(report, e.to_string(), EXIT_INVALID),
    };
    report.presentation = Some(Presentation::new(&pres, &red));
    let alg = match GradedF2Algebra::build(&red, red.dim, flags.monomial_cap) {
        Ok(a) => a,
        Err(e @ CohomologyError::BudgetExceeded { .. }) => {
            report.budget_exceeded = true;
            return fail(report, e.to_string(), EXIT_BUDGET);
        }
        Err(e) => return fail(report, e.to_string(), EXIT_INVALID),
    };
    report.cohomology = Some(CohomologySummary::new(
        &alg,
        inst.polytope.dim(),
        inst.polytope.vertex_count(),
        flags.print_basis,
        flags.max_degree,
    ));
    if flags.timing {
        report.timing = Some(Timing {
            cohomology_ms: t.elapsed().as_millis(),
            bounds_ms: None,
        });
    }
    Ok((report, inst, alg))
}

pub fn cmd_cohomology(doc: InputDocument, flags: &CohomologyFlags) -> (ReportDocument, i32) {
    match ring_for(&doc, flags) {
        Ok((report, _, _)) => (report, EXIT_OK),
        Err(partial) => *partial,
    }
}

pub fn cmd_bounds(doc: InputDocument, flags: &CohomologyFlags, external: ExternalTable) -> (ReportDocument, i32) {
    let (mut report, inst, alg) = match ring_for(&doc, flags) {
        Ok(x) => x,
        Err(partial) => return *partial,
    };
    let opts = BoundsOptions {
        search: doc.options.search(),
        assert_rz_simply_connected: doc.options.assert_rz_simply_connected,
        external,
    };
    let t = Instant::now();
    let bounds = bounds_from_algebra(&inst.polytope, &alg, inst.bott.as_ref(), &opts);
    if let Some(timing) = &mut report.timing {
        timing.bounds_ms = Some(t.elapsed().as_millis());
    }
    let code = if bounds.budget_exhausted {
        report.budget_exceeded = true;
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    report.bounds = Some(bounds);
    (report, code)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyRow {
    pub bits: String,
    pub dims: Vec<usize>,
    pub zcl: usize,
    pub tc: [usize; 2],
    pub tcs: [usize; 2],
    pub budget_exhausted: bool,
}

/// One row per normal-form matrix, in ascending order of the lower bits.
pub fn classify(dims: &[usize], budget: u64, strategy: Strategy) -> Result<Vec<ClassifyRow>, CharError> {
    let e = enumerate_bott(dims, budget)?;
    let polytope = crate::complexes::SimplePolytope::product_of_simplices(dims)?;
    let mut opts = BoundsOptions::default();
    opts.search.strategy = strategy;
    let rows = (0..e.total())
        .into_par_iter()
        .map(|i| {
            let b = e.get(i);
            let (_, alg) = crate::cohomology::cohomology_ring(&polytope, &b.to_characteristic())
                .expect("normal-form matrices are valid");
            let r = bounds_from_algebra(&polytope, &alg, Some(&b), &opts);
            let tc_hi = r.tc.interval.exact.unwrap_or(r.tc.interval.hi);
            let tc_lo = r.tc.interval.exact.unwrap_or(r.tc.interval.lo);
            ClassifyRow {
                bits: b.lower_bits(),
                dims: alg.dims(),
                zcl: r.zcl.length,
                tc: [tc_lo, tc_hi],
                tcs: [r.tcs.interval.lo, r.tcs.interval.hi],
                budget_exhausted: r.budget_exhausted,
            }
        })
        .collect();
    Ok(rows)
}

fn cmd_classify(dims: &[usize], budget: u64, strategy: Strategy, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let rows = match classify(dims, budget, strategy) {
        Ok(r) => r,
        Err(e @ CharError::BudgetExceeded { .. }) => {
            let _ = writeln!(err, "{e}");
            return EXIT_BUDGET;
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_INVALID;
        }
    };
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializes"));
        }
        Format::Text => {
            let _ = writeln!(out, "{:<12} {:<22} {:>5}  {:<8} {:<8}", "bits", "dims", "zcl", "TC", "TC^S");
            for r in &rows {
                let d: Vec<String> = r.dims.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "{:<12} {:<22} {:>5}  {:<8} {:<8}{}",
                    if r.bits.is_empty() { "-" } else { &r.bits },
                    format!("({})", d.join(",")),
                    format!(">={}", r.zcl),
                    span(r.tc),
                    span(r.tcs),
                    if r.budget_exhausted { "  (budget)" } else { "" }
                );
            }
        }
    }
    if rows.iter().any(|r| r.budget_exhausted) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn span([lo, hi]: [usize; 2]) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("[{lo},{hi}]")
    }
}

#[derive(Serialize)]
struct ReproReport<'a> {
    rows: &'a [repro::ReproRow],
    passed: bool,
}

fn cmd_repro(filter: Option<&str>, exp: &repro::Expectations, format: Format, out: &mut dyn Write) -> i32 {
    let rows = repro::run(filter, exp);
    let passed = rows.iter().all(|r| r.passed);
    match format {
        Format::Json => {
            let r = ReproReport { rows: &rows, passed };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializes"));
        }
        Format::Text => {
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{} {:<17} {:>6} ms  {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.id,
                    r.millis,
                    r.claim
                );
                let _ = writeln!(out, "     expected: {}", r.expected);
                let _ = writeln!(out, "     computed: {}", r.computed);
            }
            let failed = rows.iter().filter(|r| !r.passed).count();
            let _ = writeln!(out, "{} rows, {failed} failed", rows.len());
        }
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

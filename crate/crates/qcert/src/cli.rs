//! Batch certification front end: argument grammar, suite dispatch, JSON
//! lines and Markdown output, and exit status.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::expected::Expected;
use crate::linsys::{certify_cancellation, cross_order_report, Order, ProblemIndex};
use crate::noncompact::certify_n;
use crate::pohozaev4::{matrix_q4, Family, FamilySpec};
use crate::pohozaev6::matrix_q6;
use crate::report::{markdown_summary, VerificationReport};
use crate::scan::{certify_built, matrix_json, scan, Builder, SFilter};
use crate::suites;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qcert", version, about = "Exact certification of the Q-curvature compactness computations")]
pub struct Cli {
    /// Write every report as one JSON object per line to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write a Markdown summary table to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub md: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Print only the final summary line.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourth-order Pohozaev matrices against the expectation table.
    Q4(FormArgs),
    /// Sixth-order Pohozaev matrices against the expectation table.
    Q6(FormArgs),
    /// Exact solves of the linearized systems.
    Linearized(LinearizedArgs),
    /// Non-compactness constants in Q(sqrt(disc)).
    Noncompact(NoncompactArgs),
    /// Radial-oracle equivalence checks.
    RadialSelftest,
    /// Dump one matrix with exact entries, and certify it.
    Matrix(MatrixArgs),
    /// Every acceptance suite.
    All(AllArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "W", alias = "w")]
    W,
    #[value(name = "H", alias = "h")]
    H,
    All,
}

impl FamilyArg {
    fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::D => vec![Family::D],
            FamilyArg::W => vec![Family::W],
            FamilyArg::H => vec![Family::H],
            FamilyArg::All => Family::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
pub struct FormArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub family: FamilyArg,
    /// Dimension range A..B (inclusive); defaults to each family's PD range
    /// through its failure window.
    #[arg(long, value_parser = parse_range)]
    pub n: Option<RangeInclusive<i64>>,
    /// A single s, or `all`.
    #[arg(long, value_parser = parse_s, default_value = "all")]
    pub s: SFilter,
}

#[derive(Debug, Args)]
pub struct LinearizedArgs {
    /// 2, 4, 6 or `all`.
    #[arg(long, value_parser = parse_orders, default_value = "all")]
    pub order: OrderSel,
    #[arg(long, value_parser = parse_range)]
    pub n: Option<RangeInclusive<i64>>,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub s: Option<i64>,
    /// Also check Gamma(2) = Gamma(4) = Gamma(6) on the common grid.
    #[arg(long)]
    pub cross_order: bool,
}

#[derive(Debug, Args)]
pub struct NoncompactArgs {
    #[arg(long, value_parser = parse_range)]
    pub n: Option<RangeInclusive<i64>>,
    /// Also compare with the transcribed a0 and Hessian tables.
    #[arg(long)]
    pub with_paper_a0_tables: bool,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// 4 or 6.
    #[arg(long, value_parser = clap::value_parser!(i64).range(4..=6))]
    pub order: i64,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub s: i64,
}

#[derive(Debug, Args)]
pub struct AllArgs {
    #[arg(long)]
    pub with_paper_a0_tables: bool,
}

/// `A..B`, `A..=B` (both inclusive) or a single `A`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn parse_s(s: &str) -> Result<SFilter, String> {
    if s.eq_ignore_ascii_case("all") {
        Ok(SFilter::All)
    } else {
        s.parse::<i64>().map(SFilter::Only).map_err(|e| format!("{s:?}: {e}"))
    }
}

/// The orders selected by `--order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSel(pub Vec<Order>);

fn parse_orders(s: &str) -> Result<OrderSel, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(OrderSel(Order::ALL.to_vec()));
    }
    let v = s.parse::<i64>().map_err(|e| format!("{s:?}: {e}"))?;
    Order::from_value(v).map(|o| OrderSel(vec![o])).map_err(|e| e.to_string())
}

fn form_reports(order_shift: i64, args: &FormArgs) -> Vec<VerificationReport> {
    let build: Builder = if order_shift == 4 { matrix_q4 } else { matrix_q6 };
    let e = Expected::get();
    let mut out = Vec::new();
    for fam in args.family.families() {
        let range = args.n.clone().unwrap_or_else(|| {
            let c = e.family(order_shift, fam);
            c.pd.0..=c.fail_window.1
        });
        out.extend(scan(order_shift, range, &[fam], args.s, build));
    }
    out
}

fn linearized_reports(args: &LinearizedArgs) -> Vec<VerificationReport> {
    let range = args.n.clone().unwrap_or(0..=Expected::get().linsys_max_n);
    let keep = |i: &ProblemIndex| args.k.is_none_or(|k| i.k == k) && args.s.is_none_or(|s| i.s == s);
    let orders = &args.order.0;
    let grid: Vec<ProblemIndex> =
        orders.iter().flat_map(|&o| ProblemIndex::grid(o, range.clone())).filter(keep).collect();
    let mut out: Vec<VerificationReport> = grid.par_iter().map(certify_cancellation).collect();
    if args.cross_order {
        let common: Vec<ProblemIndex> = ProblemIndex::grid(Order::Six, range)
            .into_iter()
            .filter(keep)
            .filter(|i| Order::ALL.iter().all(|&o| ProblemIndex::admissible(o, i.n, i.k, i.s)))
            .collect();
        out.extend(common.par_iter().map(|i| cross_order_report(i.n, i.k, i.s)).collect::<Vec<_>>());
    }
    out
}

fn matrix_reports(args: &MatrixArgs, stdout: &mut dyn Write) -> Result<Vec<VerificationReport>, String> {
    let family = match args.family.families().as_slice() {
        [f] => *f,
        _ => return Err("matrix needs a single family".into()),
    };
    if args.order != 4 && args.order != 6 {
        return Err("matrix --order must be 4 or 6".into());
    }
    let spec = FamilySpec::new(family, args.n, args.s, args.order).map_err(|e| e.to_string())?;
    let built = if args.order == 4 { matrix_q4(&spec) } else { matrix_q6(&spec) };
    let base = crate::scan::spec_report("definiteness", &spec);
    Ok(vec![match built {
        Ok(b) => {
            let _ = writeln!(stdout, "{}", matrix_json(&b));
            certify_built(&b).unwrap_or_else(|e| base.error(&e))
        }
        Err(e) => base.error(&e),
    }])
}

/// Parses arguments, runs the selected suite and writes the outputs.
/// Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_PASS;
        }
    };
    if let Some(j) = cli.jobs {
        // A pool that already exists (a second call in one process) keeps
        // its size; that only affects speed.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let reports = match &cli.command {
        Command::Q4(a) => form_reports(4, a),
        Command::Q6(a) => form_reports(6, a),
        Command::Linearized(a) => linearized_reports(a),
        Command::Noncompact(a) => {
            let range = a.n.clone().unwrap_or_else(|| {
                let w = Expected::get().noncompact.window;
                w.0..=w.1
            });
            let ns: Vec<i64> = range.collect();
            ns.par_iter().flat_map_iter(|&n| certify_n(n, a.with_paper_a0_tables)).collect()
        }
        Command::RadialSelftest => suites::criterion_5().reports,
        Command::Matrix(a) => match matrix_reports(a, stdout) {
            Ok(r) => r,
            Err(msg) => {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
        },
        Command::All(a) => {
            let outcomes = suites::all(a.with_paper_a0_tables);
            if !cli.quiet {
                for o in &outcomes {
                    let _ = writeln!(stdout, "{}", o.summary_line());
                }
            }
            outcomes.into_iter().flat_map(|o| o.reports).collect()
        }
    };
    if reports.is_empty() {
        let _ = writeln!(stderr, "error: no admissible checks in the requested range");
        return EXIT_USAGE;
    }
    finish(&cli, &reports, stdout, stderr)
}

fn finish(cli: &Cli, reports: &[VerificationReport], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if let Some(path) = &cli.json {
        let body: String = reports.iter().map(|r| r.to_json_line() + "\n").collect();
        if let Err(e) = fs::write(path, body) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_FAIL;
        }
    }
    if let Some(path) = &cli.md {
        if let Err(e) = fs::write(path, markdown_summary(reports)) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_FAIL;
        }
    }
    let bad: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed()).collect();
    if !cli.quiet {
        for r in &bad {
            let _ = writeln!(stdout, "{}", r.to_json_line());
        }
    }
    let _ = writeln!(stdout, "{} checks, {} passed, {} not passing", reports.len(), reports.len() - bad.len(), bad.len());
    if bad.is_empty() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("qcert").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("8..24").unwrap(), 8..=24);
        assert_eq!(parse_range("8..=24").unwrap(), 8..=24);
        assert_eq!(parse_range("27").unwrap(), 27..=27);
        assert!(parse_range("9..8").is_err());
        assert!(parse_range("x..8").is_err());
    }

    #[test]
    fn q4_d_small_range_passes() {
        let (code, out, _) = run_capture(&["q4", "--family", "D", "--n", "8..12"]);
        assert_eq!(code, EXIT_PASS, "{out}");
    }

    #[test]
    fn linearized_single_index_passes() {
        let (code, out, _) = run_capture(&["linearized", "--order", "6", "--n", "12", "--k", "2", "--s", "0"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.starts_with("1 checks, 1 passed"));
    }

    #[test]
    fn bad_arguments_are_usage_errors() {
        assert_eq!(run_capture(&["q4", "--family", "X"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["linearized", "--order", "3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["q4", "--n", "1..3"]).0, EXIT_USAGE);
    }

    #[test]
    fn matrix_dump_is_exact() {
        let (code, out, _) = run_capture(&["matrix", "--order", "4", "--family", "D", "--n", "8", "--s", "2"]);
        assert_eq!(code, EXIT_PASS);
        let first: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
        assert_eq!(first["entries"][0][0], "320000000000");
    }
}

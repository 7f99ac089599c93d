//! Command-line frontend: Seifert-notation parsing, dispatch, rendering
//! (tables, JSON, CSV), verification runs, and work-limit guards.
//!
//! Exit codes: 0 success, 1 usage/parse error, 2 consistency failure
//! detected by verification, 3 work limit exceeded or guard refusal.

use std::io::{BufRead, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::counting::{check_consistency, degree_count_table_from_dw, ConsistencyReport};
use crate::dw::{dw_all, DwVector};
use crate::error::{Error, ParseError, Result};
use crate::limits::{estimate_dw_work, estimate_enum_tuples, WorkBudget};
use crate::oracle::cross_validate_dw;
use crate::seifert::{validate_seifert, SeifertData};

/// Largest m accepted without `--force`.
pub const DEFAULT_MAX_M: u64 = 32;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_WORK_LIMIT: i32 = 3;

// ---------------------------------------------------------------------------
// Seifert notation parser
// ---------------------------------------------------------------------------

/// Parses the grammar
///
/// ```text
///   manifold := "MO" "(" integer ";" pairlist? ")"
///   pairlist := pair ("," pair)*
///   pair     := "(" integer "," integer ")"
/// ```
///
/// Whitespace-insensitive; integers in decimal with optional leading
/// minus. Domain errors (negative genus, nonpositive multiplicity) are
/// forwarded from validation.
pub fn parse_seifert(text: &str) -> Result<SeifertData> {
    let mut p = Cursor::new(text);
    p.expect_keyword("MO")?;
    p.expect_byte(b'(')?;
    let genus = p.integer()?;
    p.expect_byte(b';')?;
    let mut pairs = Vec::new();
    if !p.peeks(b')') {
        loop {
            p.expect_byte(b'(')?;
            let a = p.integer()?;
            p.expect_byte(b',')?;
            let b = p.integer()?;
            p.expect_byte(b')')?;
            pairs.push((a, b));
            if p.peeks(b',') {
                p.advance();
                continue;
            }
            break;
        }
    }
    p.expect_byte(b')')?;
    p.expect_end()?;
    validate_seifert(genus, &pairs)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn fail(&self, expected: &str) -> Error {
        Error::Parse(ParseError {
            offset: self.pos,
            expected: expected.to_string(),
        })
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.fail(&format!("\"{kw}\"")))
        }
    }

    fn expect_byte(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&format!("'{}'", b as char)))
        }
    }

    fn peeks(&mut self, b: u8) -> bool {
        self.skip_ws();
        self.pos < self.bytes.len() && self.bytes[self.pos] == b
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        if end < self.bytes.len() && self.bytes[end] == b'-' {
            end += 1;
        }
        let digits_from = end;
        while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits_from {
            return Err(self.fail("integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..end]).expect("ascii slice");
        let value: i64 = text.parse().map_err(|_| self.fail("integer in i64 range"))?;
        self.pos = end;
        Ok(value)
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(self.fail("end of input"))
        }
    }
}

// ---------------------------------------------------------------------------
// Request model and argument parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Counts,
    Dw,
    Verify,
    Batch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

/// One fully-resolved computation request.
#[derive(Debug, Clone)]
pub struct Request {
    pub manifold: SeifertData,
    pub m: u64,
    pub mode: Mode,
    pub k: Option<i64>,
    pub output: OutputFormat,
    pub float_check: bool,
    pub force: bool,
    pub max_work: Option<u64>,
    /// run the consistency checks alongside counts/dw output
    pub verify: bool,
}

#[derive(Parser, Debug)]
#[command(
    name = "dwcount",
    about = "Exact invariants of Seifert fibered 3-manifolds for cyclic gauge groups, \
             and mapping-degree class counts for lens-space targets",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count homotopy classes per degree class
    Counts(CountsArgs),
    /// Print the invariant table l -> Z^l
    Dw(SingleArgs),
    /// Run all consistency checks and oracle comparisons
    Verify(SingleArgs),
    /// Process line-delimited JSON requests from stdin
    Batch(BatchArgs),
}

#[derive(Args, Debug)]
pub struct CountsArgs {
    #[command(flatten)]
    pub common: SingleArgs,
    /// Report a single degree instead of the whole table
    #[arg(long)]
    pub k: Option<i64>,
}

#[derive(Args, Debug)]
pub struct SingleArgs {
    /// Seifert tuple, e.g. "MO(0;(1,2))"
    #[arg(long)]
    pub manifold: String,
    /// Order of the cyclic group
    #[arg(long)]
    pub m: u64,
    /// Emit JSON instead of a table
    #[arg(long)]
    pub json: bool,
    /// Emit CSV instead of a table
    #[arg(long)]
    pub csv: bool,
    /// Also run the consistency checks (implied by the verify command)
    #[arg(long)]
    pub verify: bool,
    /// Include the floating-point and enumeration oracles in the checks
    #[arg(long = "float-check")]
    pub float_check: bool,
    /// Work budget (term/tuple cap); overrides DWCOUNT_MAX_WORK
    #[arg(long = "max-work")]
    pub max_work: Option<u64>,
    /// Bypass the m and work-estimate guard
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug)]
pub struct BatchArgs {
    /// Include the floating-point and enumeration oracles in the checks
    #[arg(long = "float-check")]
    pub float_check: bool,
    /// Work budget per line; overrides DWCOUNT_MAX_WORK
    #[arg(long = "max-work")]
    pub max_work: Option<u64>,
    /// Bypass the m and work-estimate guard
    #[arg(long)]
    pub force: bool,
}

fn build_request(mode: Mode, args: &SingleArgs, k: Option<i64>) -> Result<Request> {
    let manifold = parse_seifert(&args.manifold)?;
    if args.m == 0 {
        return Err(Error::InvalidGroupOrder(0));
    }
    let output = if args.json {
        OutputFormat::Json
    } else if args.csv {
        OutputFormat::Csv
    } else {
        OutputFormat::Table
    };
    Ok(Request {
        manifold,
        m: args.m,
        mode,
        k,
        output,
        float_check: args.float_check,
        force: args.force,
        max_work: args.max_work,
        verify: args.verify || mode == Mode::Verify,
    })
}

/// Budget resolution: built-in default, overridden by DWCOUNT_MAX_WORK,
/// overridden by --max-work; --force lifts the budget entirely.
pub fn resolve_budget(max_work: Option<u64>, force: bool) -> WorkBudget {
    if force {
        return WorkBudget::unlimited();
    }
    if let Some(w) = max_work {
        return WorkBudget::uniform(w);
    }
    if let Ok(raw) = std::env::var("DWCOUNT_MAX_WORK") {
        if let Ok(w) = raw.parse::<u64>() {
            return WorkBudget::uniform(w);
        }
    }
    WorkBudget::default()
}

/// The m/work guard: refuses m > 32 or an estimate above the budget
/// unless forced.
fn guard(req: &Request, budget: &WorkBudget) -> Result<()> {
    if req.force {
        return Ok(());
    }
    if req.m > DEFAULT_MAX_M {
        return Err(Error::WorkLimitExceeded {
            estimate: estimate_dw_work(&req.manifold, req.m),
            budget: budget.max_terms,
        });
    }
    budget.check_terms(estimate_dw_work(&req.manifold, req.m))?;
    if req.float_check || req.mode == Mode::Verify {
        budget.check_tuples(estimate_enum_tuples(&req.manifold, req.m))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct JsonManifold {
    genus: u64,
    pairs: Vec<[i64; 2]>,
}

#[derive(Serialize)]
struct JsonDwEntry {
    l: u64,
    exact: String,
    approx: [f64; 2],
}

#[derive(Serialize)]
struct JsonChecks {
    totals_match: bool,
    trivial_class_check: bool,
    nonnegativity: bool,
    roundtrip: bool,
    conjugation_symmetry: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_hom_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    float_agreement: Option<bool>,
    all_pass: bool,
    failures: Vec<String>,
}

/// The unified result object; field order is the wire format.
#[derive(Serialize)]
pub struct JsonResult {
    manifold: JsonManifold,
    m: u64,
    dw: Vec<JsonDwEntry>,
    counts: Vec<serde_json::Number>,
    hom_count: serde_json::Number,
    checks: JsonChecks,
}

fn exact_number(value: &BigUint) -> serde_json::Number {
    serde_json::Number::from_str(&value.to_string()).expect("decimal integer literal")
}

/// Assembles the full result bundle for one manifold: invariant table,
/// counts, homomorphism count, and the consistency report.
pub struct ResultBundle {
    pub manifold: SeifertData,
    pub m: u64,
    pub dw: DwVector,
    pub counts: Vec<BigUint>,
    pub report: ConsistencyReport,
}

pub fn compute_bundle(
    manifold: &SeifertData,
    m: u64,
    float_check: bool,
    budget: &WorkBudget,
) -> Result<ResultBundle> {
    let dw = dw_all(manifold, m, budget)?;
    let report = if float_check {
        cross_validate_dw(manifold, &dw, budget)?
    } else {
        check_consistency(manifold, &dw)
    };
    let counts = degree_count_table_from_dw(&dw)?.counts().to_vec();
    Ok(ResultBundle {
        manifold: manifold.clone(),
        m,
        dw,
        counts,
        report,
    })
}

/// Renders the fixed-schema JSON object for a computed bundle.
pub fn emit_json(bundle: &ResultBundle) -> String {
    let result = JsonResult {
        manifold: JsonManifold {
            genus: bundle.manifold.genus(),
            pairs: bundle
                .manifold
                .fibers()
                .iter()
                .map(|p| [p.multiplicity, p.twist])
                .collect(),
        },
        m: bundle.m,
        dw: (0..bundle.m)
            .map(|l| {
                let v = bundle.dw.get(l);
                let a = v.approx();
                JsonDwEntry {
                    l,
                    exact: v.reduce().to_string(),
                    approx: [a.re, a.im],
                }
            })
            .collect(),
        counts: bundle.counts.iter().map(exact_number).collect(),
        hom_count: exact_number(&bundle.report.hom_count),
        checks: JsonChecks {
            totals_match: bundle.report.totals_match,
            trivial_class_check: bundle.report.trivial_class_check,
            nonnegativity: bundle.report.nonnegativity,
            roundtrip: bundle.report.roundtrip,
            conjugation_symmetry: bundle.report.conjugation_symmetry,
            oracle_hom_match: bundle.report.oracle_hom_match,
            float_agreement: bundle.report.float_agreement,
            all_pass: bundle.report.all_pass(),
            failures: bundle.report.failures.clone(),
        },
    };
    serde_json::to_string(&result).expect("serializable result")
}

// ---------------------------------------------------------------------------
// Table and CSV rendering
// ---------------------------------------------------------------------------

fn render_counts_table(counts: &[BigUint], single: Option<(i64, &BigUint)>) -> String {
    match single {
        Some((k, c)) => format!("k={k}: {c}\n"),
        None => counts
            .iter()
            .enumerate()
            .map(|(k, c)| format!("k={k}: {c}\n"))
            .collect(),
    }
}

fn render_counts_csv(counts: &[BigUint], single: Option<(i64, &BigUint)>) -> String {
    let mut out = String::from("k,count\n");
    match single {
        Some((k, c)) => out.push_str(&format!("{k},{c}\n")),
        None => {
            for (k, c) in counts.iter().enumerate() {
                out.push_str(&format!("{k},{c}\n"));
            }
        }
    }
    out
}

fn render_dw_table(dw: &DwVector) -> String {
    (0..dw.m())
        .map(|l| {
            let v = dw.get(l);
            let a = v.approx();
            format!("l={l}: {}  (~ {:.9}{:+.9}i)\n", v.reduce(), a.re, a.im)
        })
        .collect()
}

fn render_dw_csv(dw: &DwVector) -> String {
    let mut out = String::from("l,exact,re,im\n");
    for l in 0..dw.m() {
        let v = dw.get(l);
        let a = v.approx();
        out.push_str(&format!("{l},{},{},{}\n", v.reduce(), a.re, a.im));
    }
    out
}

fn render_report(report: &ConsistencyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("hom_count:      {}\n", report.hom_count));
    out.push_str(&format!("sum_of_counts:  {}\n", report.sum_of_counts));
    let flag = |b: bool| if b { "PASS" } else { "FAIL" };
    out.push_str(&format!("totals_match:         {}\n", flag(report.totals_match)));
    out.push_str(&format!(
        "trivial_class_check:  {}\n",
        flag(report.trivial_class_check)
    ));
    out.push_str(&format!("nonnegativity:        {}\n", flag(report.nonnegativity)));
    out.push_str(&format!("roundtrip:            {}\n", flag(report.roundtrip)));
    out.push_str(&format!(
        "conjugation_symmetry: {}\n",
        flag(report.conjugation_symmetry)
    ));
    if let Some(b) = report.oracle_hom_match {
        out.push_str(&format!("oracle_hom_match:     {}\n", flag(b)));
    }
    if let Some(b) = report.float_agreement {
        out.push_str(&format!("float_agreement:      {}\n", flag(b)));
    }
    for f in &report.failures {
        out.push_str(&format!("failure: {f}\n"));
    }
    out.push_str(if report.all_pass() {
        "all checks passed\n"
    } else {
        "CONSISTENCY FAILURE\n"
    });
    out
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::WorkLimitExceeded { .. } => EXIT_WORK_LIMIT,
        _ => EXIT_USAGE,
    }
}

/// Exit code for a computed report: any detected inconsistency maps to 2.
pub fn exit_for_report(report: &ConsistencyReport) -> i32 {
    if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

/// Runs one non-batch request, writing rendered output; returns the exit
/// code.
pub fn run_single(req: &Request, out: &mut impl Write, err: &mut impl Write) -> i32 {
    for idx in req.manifold.non_coprime_pairs() {
        let p = req.manifold.fibers()[idx];
        let _ = writeln!(
            err,
            "warning: pair #{idx} ({},{}) is not coprime; standard Seifert data has gcd(a,b) = 1",
            p.multiplicity, p.twist
        );
    }

    let budget = resolve_budget(req.max_work, req.force);
    if let Err(e) = guard(req, &budget) {
        let _ = writeln!(err, "refused: {e} (pass --force to override)");
        return EXIT_WORK_LIMIT;
    }

    let needs_checks = req.verify || req.output == OutputFormat::Json;
    let outcome = (|| -> Result<i32> {
        if needs_checks {
            let bundle = compute_bundle(&req.manifold, req.m, req.float_check, &budget)?;
            match req.output {
                OutputFormat::Json => {
                    let _ = writeln!(out, "{}", emit_json(&bundle));
                }
                _ => {
                    let body = match req.mode {
                        Mode::Counts => match req.output {
                            OutputFormat::Csv => render_counts_csv(
                                &bundle.counts,
                                req.k.map(|k| {
                                    let idx = k.rem_euclid(req.m as i64) as usize;
                                    (k, &bundle.counts[idx])
                                }),
                            ),
                            _ => render_counts_table(
                                &bundle.counts,
                                req.k.map(|k| {
                                    let idx = k.rem_euclid(req.m as i64) as usize;
                                    (k, &bundle.counts[idx])
                                }),
                            ),
                        },
                        Mode::Dw => match req.output {
                            OutputFormat::Csv => render_dw_csv(&bundle.dw),
                            _ => render_dw_table(&bundle.dw),
                        },
                        _ => String::new(),
                    };
                    let _ = write!(out, "{body}");
                    // keep machine-readable CSV clean: when counts/dw rows go
                    // to stdout, the accompanying report goes to stderr
                    if req.output == OutputFormat::Csv && req.mode != Mode::Verify {
                        let _ = write!(err, "{}", render_report(&bundle.report));
                    } else {
                        let _ = write!(out, "{}", render_report(&bundle.report));
                    }
                }
            }
            return Ok(exit_for_report(&bundle.report));
        }

        // plain counts/dw output without checks
        let dw = dw_all(&req.manifold, req.m, &budget)?;
        let body = match (req.mode, req.output) {
            (Mode::Counts, OutputFormat::Csv) => {
                let counts = degree_count_table_from_dw(&dw)?;
                render_counts_csv(
                    counts.counts(),
                    req.k.map(|k| (k, counts.count(k))),
                )
            }
            (Mode::Counts, _) => {
                let counts = degree_count_table_from_dw(&dw)?;
                render_counts_table(
                    counts.counts(),
                    req.k.map(|k| (k, counts.count(k))),
                )
            }
            (Mode::Dw, OutputFormat::Csv) => render_dw_csv(&dw),
            (Mode::Dw, _) => render_dw_table(&dw),
            _ => String::new(),
        };
        let _ = write!(out, "{body}");
        Ok(EXIT_OK)
    })();

    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

#[derive(Deserialize)]
struct BatchLine {
    manifold: String,
    m: u64,
}

#[derive(Serialize)]
struct BatchError {
    error: String,
}

/// Batch mode: one JSON request per input line, one JSON result per
/// output line, order preserved. The exit code is the worst per-line
/// code.
pub fn run_batch(
    args: &BatchArgs,
    input: impl BufRead,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32 {
    let budget = resolve_budget(args.max_work, args.force);
    let mut worst = EXIT_OK;
    for line in input.lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                let _ = writeln!(err, "error reading input: {e}");
                return EXIT_USAGE;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let (rendered, code) = batch_one(&line, args, &budget);
        let _ = writeln!(out, "{rendered}");
        worst = worst.max(code);
    }
    worst
}

fn batch_one(line: &str, args: &BatchArgs, budget: &WorkBudget) -> (String, i32) {
    let fail = |msg: String, code: i32| {
        (
            serde_json::to_string(&BatchError { error: msg }).expect("serializable"),
            code,
        )
    };
    let parsed: BatchLine = match serde_json::from_str(line) {
        Ok(p) => p,
        Err(e) => return fail(format!("invalid request line: {e}"), EXIT_USAGE),
    };
    let manifold = match parse_seifert(&parsed.manifold) {
        Ok(m) => m,
        Err(e) => return fail(e.to_string(), EXIT_USAGE),
    };
    if parsed.m == 0 {
        return fail("group order must be positive".into(), EXIT_USAGE);
    }
    if !args.force {
        if parsed.m > DEFAULT_MAX_M {
            return fail(
                format!(
                    "refused: m={} exceeds the guard ({}); estimated work {}",
                    parsed.m,
                    DEFAULT_MAX_M,
                    estimate_dw_work(&manifold, parsed.m)
                ),
                EXIT_WORK_LIMIT,
            );
        }
        if let Err(e) = budget.check_terms(estimate_dw_work(&manifold, parsed.m)) {
            return fail(format!("refused: {e}"), EXIT_WORK_LIMIT);
        }
    }
    match compute_bundle(&manifold, parsed.m, args.float_check, budget) {
        Ok(bundle) => (emit_json(&bundle), exit_for_report(&bundle.report)),
        Err(e) => fail(e.to_string(), exit_code_for(&e)),
    }
}

/// Top-level entry used by the binary: parse arguments, dispatch, return
/// the process exit code.
pub fn run_cli<I, T>(
    argv: I,
    stdin: impl BufRead,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not usage errors
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
        }
    };
    match &cli.command {
        Command::Counts(args) => match build_request(Mode::Counts, &args.common, args.k) {
            Ok(req) => run_single(&req, out, err),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Command::Dw(args) => match build_request(Mode::Dw, args, None) {
            Ok(req) => run_single(&req, out, err),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Command::Verify(args) => match build_request(Mode::Verify, args, None) {
            Ok(mut req) => {
                // verify always exercises the oracle comparisons
                req.float_check = true;
                run_single(&req, out, err)
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Command::Batch(args) => run_batch(args, stdin, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Cursor as IoCursor;

    fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("dwcount").chain(args.iter().copied());
        let code = run_cli(argv, IoCursor::new(stdin.to_string()), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn parse_seifert_basic_forms() {
        let m = parse_seifert("MO(0; (1,2))").unwrap();
        assert_eq!(m.genus(), 0);
        assert_eq!(m.fibers().len(), 1);

        let m = parse_seifert("MO(2;(3,1),(5,-2))").unwrap();
        assert_eq!(m.genus(), 2);
        assert_eq!(m.fibers()[1].twist, -2);

        assert!(matches!(
            parse_seifert("MO(-1;)"),
            Err(Error::NegativeGenus(-1))
        ));
    }

    #[test]
    fn parse_seifert_reports_offsets() {
        let err = parse_seifert("MO(0;(1,2)").unwrap_err();
        match err {
            Error::Parse(p) => {
                assert_eq!(p.offset, 10);
                assert!(p.expected.contains("')'") || p.expected.contains("','"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_seifert("NO(0;)").unwrap_err();
        match err {
            Error::Parse(p) => {
                assert_eq!(p.offset, 0);
                assert!(p.expected.contains("MO"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_seifert("MO(0;(x,2))").unwrap_err();
        match err {
            Error::Parse(p) => assert_eq!(p.offset, 6),
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_seifert("MO(0;) extra").unwrap_err();
        match err {
            Error::Parse(p) => assert!(p.expected.contains("end of input")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_is_whitespace_insensitive() {
        let a = parse_seifert("MO(1;(3,-4),(5,6))").unwrap();
        let b = parse_seifert("  MO ( 1 ; ( 3 , -4 ) , ( 5 , 6 ) )  ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn counts_table_output() {
        let (code, out, _) = run(&["counts", "--manifold", "MO(0;(1,2))", "--m", "2"], "");
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "k=0: 1\nk=1: 1\n");
    }

    #[test]
    fn counts_single_k() {
        let (code, out, _) = run(
            &["counts", "--manifold", "MO(0;(1,2))", "--m", "2", "--k", "7"],
            "",
        );
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "k=7: 1\n");
    }

    #[test]
    fn dw_table_output() {
        let (code, out, _) = run(&["dw", "--manifold", "MO(1;)", "--m", "2"], "");
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("l=0: 4"));
        assert!(out.contains("l=1: 4"));
    }

    #[test]
    fn parse_error_is_usage_exit() {
        let (code, _, err) = run(&["counts", "--manifold", "MO(0;(1,2)", "--m", "2"], "");
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("parse error"));
    }

    #[test]
    fn json_output_matches_schema() {
        let (code, out, _) = run(
            &["counts", "--manifold", "MO(0;(1,2))", "--m", "2", "--json"],
            "",
        );
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["manifold"]["genus"], 0);
        assert_eq!(v["manifold"]["pairs"][0][0], 1);
        assert_eq!(v["manifold"]["pairs"][0][1], 2);
        assert_eq!(v["m"], 2);
        assert_eq!(v["counts"][0], 1);
        assert_eq!(v["counts"][1], 1);
        assert_eq!(v["hom_count"], 2);
        assert_eq!(v["dw"][0]["exact"], "1");
        assert_eq!(v["dw"][1]["exact"], "0");
        assert_eq!(v["checks"]["all_pass"], true);
        // fixed key order on the wire
        let text = out.trim();
        let order = ["\"manifold\"", "\"m\"", "\"dw\"", "\"counts\"", "\"hom_count\"", "\"checks\""];
        let mut last = 0;
        for key in order {
            let here = text.find(key).unwrap_or_else(|| panic!("missing {key}"));
            assert!(here >= last, "{key} out of order");
            last = here;
        }
    }

    #[test]
    fn json_m1_degenerate() {
        let (code, out, _) = run(
            &["dw", "--manifold", "MO(0;(2,1))", "--m", "1", "--json"],
            "",
        );
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["counts"][0], 1);
        assert_eq!(v["dw"][0]["l"], 0);
        assert_eq!(v["dw"][0]["exact"], "1");
        assert_eq!(v["dw"][0]["approx"][0], 1.0);
        assert_eq!(v["dw"][0]["approx"][1], 0.0);
    }

    #[test]
    fn csv_outputs() {
        let (code, out, _) = run(
            &["counts", "--manifold", "MO(0;(1,2))", "--m", "2", "--csv"],
            "",
        );
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "k,count\n0,1\n1,1\n");

        let (code, out, _) = run(&["dw", "--manifold", "MO(1;)", "--m", "2", "--csv"], "");
        assert_eq!(code, EXIT_OK);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("l,exact,re,im"));
        assert!(lines.next().unwrap().starts_with("0,4,"));
    }

    #[test]
    fn verify_passes_on_good_manifold() {
        let (code, out, _) = run(&["verify", "--manifold", "MO(0;(3,1),(5,2))", "--m", "4"], "");
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("all checks passed"));
        assert!(out.contains("oracle_hom_match:     PASS"));
        assert!(out.contains("float_agreement:      PASS"));
    }

    #[test]
    fn guard_refuses_large_m() {
        let (code, _, err) = run(&["dw", "--manifold", "MO(0;(1,1))", "--m", "33"], "");
        assert_eq!(code, EXIT_WORK_LIMIT);
        assert!(err.contains("refused"));
        assert!(err.contains("estimated"));
    }

    #[test]
    fn guard_respects_max_work_and_force() {
        let (code, _, err) = run(
            &["dw", "--manifold", "MO(0;(1,1))", "--m", "6", "--max-work", "10"],
            "",
        );
        assert_eq!(code, EXIT_WORK_LIMIT);
        assert!(err.contains("estimated"));

        let (code, out, _) = run(
            &[
                "dw", "--manifold", "MO(0;(1,1))", "--m", "6", "--max-work", "10", "--force",
            ],
            "",
        );
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("l=0: 1/6"));
    }

    #[test]
    fn batch_preserves_line_count_and_order() {
        let input = "\
{\"manifold\":\"MO(0;(1,2))\",\"m\":2}
{\"manifold\":\"MO(1;)\",\"m\":2}
{\"manifold\":\"MO(0;(1,1))\",\"m\":3}
";
        let (code, out, _) = run(&["batch"], input);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.trim().lines().collect();
        assert_eq!(lines.len(), 3);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["hom_count"], 2);
        let second: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(second["hom_count"], 8);
        let third: serde_json::Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(third["counts"][0], 1);
        assert_eq!(third["counts"][1], 0);
    }

    #[test]
    fn batch_errors_stay_line_aligned() {
        let input = "\
{\"manifold\":\"MO(0;(1,2))\",\"m\":2}
not json at all
{\"manifold\":\"MO(0;(1,2)\",\"m\":2}
{\"manifold\":\"MO(0;(1,2))\",\"m\":64}
";
        let (code, out, _) = run(&["batch"], input);
        let lines: Vec<&str> = out.trim().lines().collect();
        assert_eq!(lines.len(), 4);
        for line in &lines {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.is_object());
        }
        assert!(lines[1].contains("error"));
        assert!(lines[2].contains("parse error"));
        assert!(lines[3].contains("refused"));
        // worst per-line code: the guard refusal dominates
        assert_eq!(code, EXIT_WORK_LIMIT);
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, _) = run(&["counts", "--manifold", "MO(0;)", "--m", "2", "--nope"], "");
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn noncoprime_warning_goes_to_stderr() {
        let (code, _, err) = run(&["dw", "--manifold", "MO(0;(2,4))", "--m", "2"], "");
        assert_eq!(code, EXIT_OK);
        assert!(err.contains("not coprime"));
    }

    #[test]
    fn injected_fault_surfaces_in_json_and_exit_code() {
        let manifold = parse_seifert("MO(0;(1,2))").unwrap();
        let budget = WorkBudget::default();
        let mut bundle = compute_bundle(&manifold, 2, false, &budget).unwrap();
        assert_eq!(exit_for_report(&bundle.report), EXIT_OK);

        bundle.report.totals_match = false;
        bundle
            .report
            .failures
            .push("sum of counts 3 != hom count 2".to_string());

        assert_eq!(exit_for_report(&bundle.report), EXIT_INCONSISTENT);
        let json = emit_json(&bundle);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["checks"]["all_pass"], false);
        assert_eq!(v["checks"]["totals_match"], false);
        assert!(v["checks"]["failures"][0]
            .as_str()
            .unwrap()
            .contains("sum of counts"));
    }

    proptest! {
        #[test]
        fn parse_render_roundtrip(
            genus in 0i64..=6,
            pairs in proptest::collection::vec((1i64..=9, -9i64..=9), 0..=5),
        ) {
            let m = validate_seifert(genus, &pairs).unwrap();
            let rendered = m.to_string();
            let reparsed = parse_seifert(&rendered).unwrap();
            prop_assert_eq!(m, reparsed);
        }
    }
}

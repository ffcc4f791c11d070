//! The `refclass` command-line front end.
//!
//! ```text
//! refclass query <file> "<sentence>" [--trace <out>] [--decimal]
//! refclass explain <file> "<sentence>"
//! refclass check <file>
//! ```
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | knowledge base unreadable or malformed, undeclared names, or trace file unwritable |
//! | 2 | knowledge base inconsistent, or `check` found violations |
//! | 3 | bad query |
//! | 4 | too many candidates (see `REFCLASS_MAX_CANDIDATES`) |
//! | 64 | bad command line |
//!
//! Results go to standard output and diagnostics to standard error. Every
//! command writes through caller-supplied writers so it can be driven from
//! tests without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use refclass::engine::DEFAULT_MAX_CANDIDATES;
use refclass::oracle::check_extensional;
use refclass::{
    parse_kb, parse_query, Engine, EngineError, EvalOptions, Interval, KnowledgeBase, Rational,
    TraceDocument, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_BAD_QUERY: i32 = 3;
pub const EXIT_TOO_MANY_CANDIDATES: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

pub const MAX_CANDIDATES_VAR: &str = "REFCLASS_MAX_CANDIDATES";

#[derive(Debug, Parser)]
#[command(
    name = "refclass",
    version,
    about = "Reference-class reasoning over statistical knowledge"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the probability interval of a sentence.
    Query {
        file: PathBuf,
        sentence: String,
        /// Write a JSON trace of the evaluation to this file.
        #[arg(long, value_name = "OUT")]
        trace: Option<PathBuf>,
        /// Annotate the answer with a decimal approximation.
        #[arg(long)]
        decimal: bool,
    },
    /// Show candidates, defeats and labels behind a verdict.
    Explain { file: PathBuf, sentence: String },
    /// Check statistics and subset facts against enumerated classes.
    Check { file: PathBuf },
}

#[derive(Debug, Clone, Default)]
pub struct QueryFlags {
    pub trace: Option<PathBuf>,
    pub decimal: bool,
}

/// Entry point used by the binary. Reads the candidate limit from the
/// environment and writes to the process's standard streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    let limit = std::env::var(MAX_CANDIDATES_VAR).ok();
    run(
        args,
        limit.as_deref(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Parses `args` (including the program name) and dispatches.
pub fn run<I, T>(
    args: I,
    max_candidates: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let options = match eval_options(max_candidates) {
        Ok(options) => options,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Query {
            file,
            sentence,
            trace,
            decimal,
        } => cmd_query(
            &file,
            &sentence,
            &QueryFlags { trace, decimal },
            options,
            out,
            err,
        ),
        Command::Explain { file, sentence } => cmd_explain(&file, &sentence, options, out, err),
        Command::Check { file } => cmd_check(&file, out, err),
    }
}

fn eval_options(max_candidates: Option<&str>) -> Result<EvalOptions, String> {
    let max_candidates = match max_candidates {
        None => DEFAULT_MAX_CANDIDATES,
        Some(text) => text.trim().parse().map_err(|_| {
            format!("{MAX_CANDIDATES_VAR} must be a non-negative integer, got `{text}`")
        })?,
    };
    Ok(EvalOptions { max_candidates })
}

/// Failure of a command, already mapped to its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn report(self, err: &mut dyn Write) -> i32 {
        let _ = writeln!(err, "{}", self.message.trim_end());
        self.code
    }
}

fn load_kb(path: &Path) -> Result<KnowledgeBase, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::new(
            EXIT_PARSE,
            format!("error: cannot read {}: {e}", path.display()),
        )
    })?;
    parse_kb(&text).map_err(|errors| {
        let code = if errors.is_inconsistency() {
            EXIT_INCONSISTENT
        } else {
            EXIT_PARSE
        };
        let mut message = String::new();
        for e in &errors.0 {
            let _ = writeln!(message, "{}:{e}", path.display());
        }
        Failure::new(code, message)
    })
}

fn evaluate(path: &Path, sentence: &str, options: EvalOptions) -> Result<Verdict, Failure> {
    let kb = load_kb(path)?;
    let query = parse_query(sentence, &kb)
        .map_err(|e| Failure::new(EXIT_BAD_QUERY, format!("error: bad query: {e}")))?;
    let engine = Engine::with_options(&kb, options).map_err(engine_failure)?;
    engine.evaluate(&query).map_err(engine_failure)
}

fn engine_failure(e: EngineError) -> Failure {
    let code = match e {
        EngineError::Inconsistent(_) => EXIT_INCONSISTENT,
        EngineError::UnknownTerm(_) | EngineError::UnknownClass(_) => EXIT_BAD_QUERY,
        EngineError::TooManyCandidates { .. } => EXIT_TOO_MANY_CANDIDATES,
    };
    Failure::new(code, format!("error: {e}"))
}

pub fn cmd_query(
    path: &Path,
    sentence: &str,
    flags: &QueryFlags,
    options: EvalOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let verdict = match evaluate(path, sentence, options) {
        Ok(v) => v,
        Err(f) => return f.report(err),
    };
    if let Some(trace_path) = &flags.trace {
        let json = TraceDocument::from_verdict(&verdict).to_json();
        if let Err(e) = std::fs::write(trace_path, json + "\n") {
            let _ = writeln!(err, "error: cannot write {}: {e}", trace_path.display());
            return EXIT_PARSE;
        }
    }
    let mut line = verdict.interval.to_string();
    if flags.decimal {
        let _ = write!(line, " ({})", decimal_interval(&verdict.interval));
    }
    let _ = writeln!(out, "{line}");
    EXIT_OK
}

pub fn cmd_explain(
    path: &Path,
    sentence: &str,
    options: EvalOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match evaluate(path, sentence, options) {
        Ok(verdict) => {
            let _ = out.write_all(render_explanation(&verdict).as_bytes());
            EXIT_OK
        }
        Err(f) => f.report(err),
    }
}

pub fn cmd_check(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let kb = match load_kb(path) {
        Ok(kb) => kb,
        Err(f) => return f.report(err),
    };
    if kb.extensions().next().is_none() {
        let _ = writeln!(
            err,
            "warning: {} enumerates no classes; nothing to check",
            path.display()
        );
        return EXIT_OK;
    }
    let report = check_extensional(&kb);
    if report.checked == 0 {
        let _ = writeln!(
            err,
            "warning: no statistic or subset fact in {} has enumerated classes; nothing to check",
            path.display()
        );
    }
    for v in &report.violations {
        let _ = writeln!(out, "violation: {v}");
    }
    let _ = writeln!(
        out,
        "checked {} facts, {} violations",
        report.checked,
        report.violations.len()
    );
    if report.is_consistent() {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

/// The human-readable account printed by `explain`.
pub fn render_explanation(verdict: &Verdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "query: {}", verdict.query);
    let equivalents: Vec<String> = verdict
        .equivalence_class
        .iter()
        .map(ToString::to_string)
        .collect();
    let _ = writeln!(s, "equivalent sentences: {}", equivalents.join("; "));

    if verdict.candidates.is_empty() {
        let _ = writeln!(s, "candidates: none");
    } else {
        let _ = writeln!(s, "candidates:");
        for (i, c) in verdict.candidates.iter().enumerate() {
            let _ = writeln!(s, "  [{i}] {c} ({})", c.kind.name());
        }
    }

    if verdict.edges.is_empty() {
        let _ = writeln!(s, "no defeats; verdict is cover of survivors");
    } else {
        let _ = writeln!(s, "defeats:");
        for e in &verdict.edges {
            let attacker = &verdict.candidates[e.attacker];
            let victim = &verdict.candidates[e.victim];
            let _ = write!(
                s,
                "  [{} -> {}] {} defeats {} by {}",
                e.attacker,
                e.victim,
                attacker.reference,
                victim.reference,
                e.principle.title()
            );
            let witnesses: Vec<String> = e.witnesses.iter().map(ToString::to_string).collect();
            match witnesses.len() {
                0 => {}
                1 => {
                    let _ = write!(s, " (witness: {})", witnesses[0]);
                }
                _ => {
                    let _ = write!(s, " (witnesses: {})", witnesses.join("; "));
                }
            }
            s.push('\n');
        }
    }

    if !verdict.labels.is_empty() {
        let _ = writeln!(s, "labels:");
        for (i, label) in verdict.labels.iter().enumerate() {
            let _ = writeln!(s, "  [{i}] {label}");
        }
    }
    let _ = writeln!(s, "verdict: {}", verdict.interval);
    s
}

/// `0.8`, `≈0.74545`, or `[0.2, 0.9]` for a non-point interval.
pub fn decimal_interval(interval: &Interval) -> String {
    if interval.is_point() {
        decimal(interval.lo(), 5)
    } else {
        format!(
            "[{}, {}]",
            decimal(interval.lo(), 5),
            decimal(interval.hi(), 5)
        )
    }
}

/// Exact long division to `places` digits. Inexact results are truncated
/// and marked with `≈`; exact ones drop trailing zeros.
pub fn decimal(value: Rational, places: usize) -> String {
    let negative = value.numer() < 0;
    let numer = value.numer().unsigned_abs() as u128;
    let denom = value.denom() as u128;
    let mut digits = String::new();
    let mut rem = numer % denom;
    for _ in 0..places {
        if rem == 0 {
            break;
        }
        rem *= 10;
        digits.push(char::from(b'0' + (rem / denom) as u8));
        rem %= denom;
    }
    let mut s = String::new();
    if rem != 0 {
        s.push('≈');
    }
    if negative {
        s.push('-');
    }
    let _ = write!(s, "{}", numer / denom);
    if !digits.is_empty() {
        s.push('.');
        s.push_str(&digits);
    }
    s
}

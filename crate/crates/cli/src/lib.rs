//! Batch front end for the `symineq` verifier.
//!
//! Exit codes: `0` when every check holds, `1` for usage, input or parse
//! errors, `2` when an exact violation is witnessed.

pub mod args;
pub mod input;
pub mod render;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::Parser;
use symineq::{
    check_main, check_pairwise_lemma, check_reciprocal_lemma, classify_equality, fuzz_with, maximize_ratio,
    proof_identity, Distribution, ExactScalar, FuzzConfig, FuzzError, InequalityError, InequalityReport, KPolicy,
    PositiveVector, SearchConfig, SearchError, Statement, Violation,
};
use thiserror::Error;

use crate::args::{Cli, Command, DistributionName, Format, FuzzArgs, InputArgs, KSelector, Lemma, MaximizeArgs};
use crate::input::{InputError, InputVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// The checker used for the main inequality by `check` and `fuzz`.
pub type MainCheck = fn(&PositiveVector, usize) -> Result<InequalityReport, InequalityError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Inequality(#[from] InequalityError),
    #[error(transparent)]
    Fuzz(#[from] FuzzError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Search(SearchError::ExactRecheck(_)) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
}

/// Parses `args` (including the program name) and runs with [`check_main`].
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_args_with(args, check_main, out, err)
}

pub fn run_args_with<I, T>(args: I, check: MainCheck, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match run(&cli, check, out, err) {
        Ok(Outcome::Holds) => EXIT_OK,
        Ok(Outcome::Violated) => EXIT_VIOLATION,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, check: MainCheck, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { input, k } => run_check(cli, input, k, check, out, err),
        Command::Lemma { input, which } => run_lemma(cli, input, *which, out, err),
        Command::Identity { input, k } => run_identity(cli, input, *k, out, err),
        Command::Fuzz(args) => run_fuzz(cli, args, check, out, err),
        Command::Maximize(args) => run_maximize(cli, args, out),
    }
}

fn read_vectors(input: &InputArgs, cap: usize) -> Result<Vec<InputVector>, CliError> {
    Ok(match (&input.values, &input.file) {
        (Some(values), None) => input::parse_inline(values, cap)?,
        (None, Some(path)) => input::read_file(path, cap)?,
        _ => return Err(CliError::Usage("give exactly one of --values or --file".into())),
    })
}

fn report_violation(violation: &Violation, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
    if format == Format::Text {
        writeln!(
            out,
            "  k={} {} VIOLATION lhs={} rhs={}",
            violation.k, violation.statement, violation.lhs, violation.rhs
        )?;
    }
    writeln!(err, "VIOLATION: {violation}")
}

fn run_check(
    cli: &Cli,
    input: &InputArgs,
    selector: &KSelector,
    check: MainCheck,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let vectors = read_vectors(input, cli.max_n)?;
    let mut reports = Vec::new();
    let mut outcome = Outcome::Holds;
    for InputVector { line, vector } in &vectors {
        let n = vector.len();
        let ks: Vec<usize> = match (selector.k, selector.interior_k) {
            (Some(k), _) => vec![k],
            (None, true) => (2..n).collect(),
            (None, false) => (1..=n).collect(),
        };
        if cli.format == Format::Text {
            out.write_all(render::vector_header(*line, vector).as_bytes())?;
            if ks.is_empty() {
                writeln!(out, "  no k with 1 < k < n")?;
            }
        }
        for k in ks {
            match check(vector, k) {
                Ok(report) => {
                    if cli.format == Format::Text {
                        let class = classify_equality(vector, k)?;
                        out.write_all(render::report_line(&report, render::equality_note(class)).as_bytes())?;
                    }
                    reports.push(report);
                }
                Err(InequalityError::Violation(violation)) => {
                    report_violation(&violation, cli.format, out, err)?;
                    outcome = Outcome::Violated;
                }
                Err(other) => return Err(other.into()),
            }
        }
    }
    if cli.format == Format::Json {
        out.write_all(render::reports_json(&reports).as_bytes())?;
    }
    Ok(outcome)
}

fn run_lemma(
    cli: &Cli,
    input: &InputArgs,
    which: Lemma,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let vectors = read_vectors(input, cli.max_n)?;
    let mut reports = Vec::new();
    let mut outcome = Outcome::Holds;
    for InputVector { line, vector } in &vectors {
        let result = match which {
            Lemma::Reciprocal => check_reciprocal_lemma(vector),
            Lemma::Pairwise => check_pairwise_lemma(vector),
        };
        if cli.format == Format::Text {
            out.write_all(render::vector_header(*line, vector).as_bytes())?;
        }
        match result {
            Ok(report) => {
                if cli.format == Format::Text {
                    let note = if report.is_equality() { "equality" } else { "strict" };
                    out.write_all(render::report_line(&report, note).as_bytes())?;
                }
                reports.push(report);
            }
            Err(InequalityError::Violation(violation)) => {
                report_violation(&violation, cli.format, out, err)?;
                outcome = Outcome::Violated;
            }
            Err(other) => return Err(other.into()),
        }
    }
    if cli.format == Format::Json {
        out.write_all(render::reports_json(&reports).as_bytes())?;
    }
    Ok(outcome)
}

fn run_identity(
    cli: &Cli,
    input: &InputArgs,
    k: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let vectors = read_vectors(input, cli.max_n)?;
    let mut reports = Vec::new();
    let mut outcome = Outcome::Holds;
    for InputVector { line, vector } in &vectors {
        let identity = proof_identity(vector, k)?;
        if cli.format == Format::Text {
            out.write_all(render::vector_header(*line, vector).as_bytes())?;
            out.write_all(render::identity_line(k, &identity).as_bytes())?;
        }
        if identity.holds() {
            reports.push(InequalityReport::certify(
                Statement::ProofIdentity,
                vector,
                k,
                identity.left,
                identity.right,
            )?);
        } else {
            let violation = Violation {
                statement: Statement::ProofIdentity,
                vector: vector.clone(),
                k,
                lhs: identity.left,
                rhs: identity.right,
            };
            writeln!(err, "VIOLATION: {violation}")?;
            outcome = Outcome::Violated;
        }
    }
    if cli.format == Format::Json {
        out.write_all(render::reports_json(&reports).as_bytes())?;
    }
    Ok(outcome)
}

/// `N`, or an inclusive range written `A..B` or `A..=B`.
pub fn parse_length_range(text: &str) -> Result<(usize, usize), String> {
    let number = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad length range {text:?}"))
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok((number(lo)?, number(hi.strip_prefix('=').unwrap_or(hi))?)),
        None => {
            let n = number(text)?;
            Ok((n, n))
        }
    }
}

fn parse_k_policy(text: &str) -> Result<KPolicy, String> {
    match text {
        "all" => Ok(KPolicy::All),
        "interior" => Ok(KPolicy::Interior),
        other => other
            .parse()
            .map(KPolicy::Fixed)
            .map_err(|_| format!("--k must be all, interior, or a number; got {other:?}")),
    }
}

fn run_fuzz(
    cli: &Cli,
    args: &FuzzArgs,
    check: MainCheck,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let (min_n, max_n) = parse_length_range(&args.n).map_err(CliError::Usage)?;
    if max_n > cli.max_n {
        return Err(CliError::Usage(format!(
            "n up to {max_n} is above the cap of {}; raise it with --max-n",
            cli.max_n
        )));
    }
    let distribution = match args.distribution {
        DistributionName::UniformInt => Distribution::UniformInteger { max: args.max_value },
        DistributionName::Rational => Distribution::RandomRational {
            max_numerator: args.max_value,
            max_denominator: args.max_value,
        },
        DistributionName::NearUniform => Distribution::NearUniform {
            epsilon: ExactScalar::parse(&args.epsilon).map_err(|e| CliError::Usage(format!("--epsilon: {e}")))?,
        },
        DistributionName::Constant => Distribution::Constant { max: args.max_value },
    };
    let config = FuzzConfig {
        min_n,
        max_n,
        k_policy: parse_k_policy(&args.k).map_err(CliError::Usage)?,
        trials: args.trials,
        distribution,
        seed: args.seed,
    };
    let report = fuzz_with(&config, check)?;
    let rendered = match cli.format {
        Format::Text => render::fuzz_text(&report),
        Format::Json => render::fuzz_json(&report),
    };
    out.write_all(rendered.as_bytes())?;
    for (_, violation) in &report.witnesses {
        writeln!(err, "VIOLATION: {violation}")?;
    }
    Ok(if report.violations == 0 {
        Outcome::Holds
    } else {
        Outcome::Violated
    })
}

fn run_maximize(cli: &Cli, args: &MaximizeArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.n > cli.max_n {
        return Err(CliError::Usage(format!(
            "n={} is above the cap of {}; raise it with --max-n",
            args.n, cli.max_n
        )));
    }
    let start = args
        .start
        .as_deref()
        .map(input::parse_floats)
        .transpose()
        .map_err(CliError::Usage)?;
    let config = SearchConfig {
        n: args.n,
        k: args.k,
        max_iterations: args.max_iter,
        step_size: args.step,
        tolerance: args.tolerance,
        seed: args.seed,
        start,
    };
    let result = maximize_ratio(&config)?;
    let rendered = match cli.format {
        Format::Text => render::maximize_text(args.n, args.k, &result),
        Format::Json => render::maximize_json(args.n, args.k, &result),
    };
    out.write_all(rendered.as_bytes())?;
    Ok(Outcome::Holds)
}

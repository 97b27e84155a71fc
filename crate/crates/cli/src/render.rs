use std::fmt::Write as _;

use serde::Serialize;
use symineq::search::{StopReason, TraceStep};
use symineq::{EqualityClass, ExactScalar, FuzzReport, InequalityReport, PositiveVector, ProofIdentity, SearchResult};

pub fn equality_note(class: EqualityClass) -> &'static str {
    match class {
        EqualityClass::BoundaryAlwaysEqual => "identity (always equality)",
        EqualityClass::UniformEqual => "equality (uniform)",
        EqualityClass::Strict => "strict",
    }
}

pub fn vector_header(line: usize, vector: &PositiveVector) -> String {
    format!("vector (line {line}): [{vector}]\n")
}

pub fn report_line(report: &InequalityReport, note: &str) -> String {
    format!(
        "  k={} {} lhs={} rhs={} slack={} {}\n",
        report.k(),
        report.statement(),
        report.lhs(),
        report.rhs(),
        report.slack(),
        note
    )
}

pub fn identity_line(k: usize, identity: &ProofIdentity) -> String {
    format!(
        "  k={} proof_identity left={} right={} scale={} {}\n",
        k,
        identity.left,
        identity.right,
        identity.scale,
        if identity.holds() { "holds" } else { "FAILS" }
    )
}

pub fn reports_json(reports: &[InequalityReport]) -> String {
    let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
    out.push('\n');
    out
}

#[derive(Debug, Serialize)]
struct WitnessJson {
    trial: usize,
    k: usize,
    vector: String,
    lhs: String,
    rhs: String,
}

#[derive(Debug, Serialize)]
struct FuzzJson {
    distribution: String,
    seed: u64,
    min_n: usize,
    max_n: usize,
    k_policy: String,
    trials: usize,
    checks: usize,
    violations: usize,
    min_slack: Option<String>,
    min_slack_k: Option<usize>,
    min_slack_vector: Option<String>,
    min_slack_trial: Option<usize>,
    witnesses: Vec<WitnessJson>,
}

pub fn fuzz_text(report: &FuzzReport) -> String {
    let mut out = String::new();
    writeln!(out, "distribution: {}", report.distribution).unwrap();
    writeln!(out, "seed: {}", report.seed).unwrap();
    writeln!(out, "n: {}..={}", report.min_n, report.max_n).unwrap();
    writeln!(out, "k: {}", report.k_policy).unwrap();
    writeln!(out, "trials: {}", report.trials).unwrap();
    writeln!(out, "checks: {}", report.checks).unwrap();
    writeln!(out, "violations: {}", report.violations).unwrap();
    if let Some(min) = &report.min_slack {
        writeln!(
            out,
            "min slack: {} (trial {}, n={}, k={}, vector [{}])",
            min.slack,
            min.trial,
            min.vector.len(),
            min.k,
            min.vector
        )
        .unwrap();
    }
    for (trial, violation) in &report.witnesses {
        writeln!(out, "VIOLATION (trial {trial}): {violation}").unwrap();
    }
    out
}

pub fn fuzz_json(report: &FuzzReport) -> String {
    let min = report.min_slack.as_ref();
    let json = FuzzJson {
        distribution: report.distribution.to_string(),
        seed: report.seed,
        min_n: report.min_n,
        max_n: report.max_n,
        k_policy: report.k_policy.to_string(),
        trials: report.trials,
        checks: report.checks,
        violations: report.violations,
        min_slack: min.map(|m| m.slack.to_string()),
        min_slack_k: min.map(|m| m.k),
        min_slack_vector: min.map(|m| m.vector.to_string()),
        min_slack_trial: min.map(|m| m.trial),
        witnesses: report
            .witnesses
            .iter()
            .map(|(trial, v)| WitnessJson {
                trial: *trial,
                k: v.k,
                vector: v.vector.to_string(),
                lhs: v.lhs.to_string(),
                rhs: v.rhs.to_string(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&json).expect("fuzz report serializes");
    out.push('\n');
    out
}

fn stop_reason(reason: StopReason) -> &'static str {
    match reason {
        StopReason::GradientTolerance => "gradient_tolerance",
        StopReason::NoFloatProgress => "no_float_progress",
        StopReason::IterationLimit => "iteration_limit",
    }
}

#[derive(Debug, Serialize)]
struct TraceJson {
    ratio: f64,
    step: f64,
    backtracks: usize,
}

#[derive(Debug, Serialize)]
struct MaximizeJson<'a> {
    n: usize,
    k: usize,
    argmax: &'a [f64],
    ratio: f64,
    exact_ratio: String,
    exact_ratio_at_most_one: bool,
    iterations: usize,
    converged: bool,
    stop_reason: &'static str,
    gradient_norm: f64,
    max_deviation_from_uniform: f64,
    trace: Vec<TraceJson>,
}

fn max_deviation(argmax: &[f64]) -> f64 {
    let uniform = 1.0 / argmax.len() as f64;
    argmax.iter().fold(0.0, |m, x| m.max((x - uniform).abs()))
}

fn float_list(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn maximize_text(n: usize, k: usize, result: &SearchResult) -> String {
    let mut out = String::new();
    let deficit = ExactScalar::one() - &result.exact_ratio;
    writeln!(out, "n: {n}").unwrap();
    writeln!(out, "k: {k}").unwrap();
    writeln!(out, "argmax: [{}]", float_list(&result.argmax)).unwrap();
    writeln!(out, "ratio: {}", result.ratio).unwrap();
    writeln!(out, "exact 1 - ratio: {:e}", deficit.to_f64()).unwrap();
    writeln!(out, "exact ratio <= 1: {}", !deficit.is_negative()).unwrap();
    writeln!(out, "max deviation from uniform: {:e}", max_deviation(&result.argmax)).unwrap();
    writeln!(out, "iterations: {}", result.iterations).unwrap();
    writeln!(out, "converged: {}", result.converged).unwrap();
    writeln!(out, "stop: {}", stop_reason(result.stop_reason)).unwrap();
    writeln!(out, "gradient norm: {:e}", result.gradient_norm).unwrap();
    out
}

pub fn maximize_json(n: usize, k: usize, result: &SearchResult) -> String {
    let json = MaximizeJson {
        n,
        k,
        argmax: &result.argmax,
        ratio: result.ratio,
        exact_ratio: result.exact_ratio.to_string(),
        exact_ratio_at_most_one: result.exact_ratio <= ExactScalar::one(),
        iterations: result.iterations,
        converged: result.converged,
        stop_reason: stop_reason(result.stop_reason),
        gradient_norm: result.gradient_norm,
        max_deviation_from_uniform: max_deviation(&result.argmax),
        trace: result
            .trace
            .iter()
            .map(
                |&TraceStep {
                     ratio,
                     step,
                     backtracks,
                 }| TraceJson {
                    ratio,
                    step,
                    backtracks,
                },
            )
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&json).expect("search result serializes");
    out.push('\n');
    out
}

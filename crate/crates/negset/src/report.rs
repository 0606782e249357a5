//! Text and JSON renderings of session, check, law and fixture reports.
//!
//! Both renderings carry the same information. Object lists are in universe
//! order and no timing data is included, so output is reproducible.

use negset_core::oracle::{Expectation, FixtureReport, LawReport, Verdict};
use negset_core::{DiscViolation, FiniteSet, NegotiationSet, Universe};
use serde_json::{json, Value};

use crate::session::{
    CheckReport, CheckedKind, EntryOutcome, EvalError, ReportEntry, SessionError, SessionReport,
    Statement,
};

fn names(set: &FiniteSet) -> Value {
    Value::from(set.member_names().collect::<Vec<_>>())
}

/// `{"necessity": [..], "admissibility": [..]}`
pub fn negset_json(set: &NegotiationSet) -> Value {
    json!({
        "necessity": names(set.necessity()),
        "admissibility": names(set.admissibility()),
    })
}

fn violations_text(violations: &[DiscViolation], u: &Universe) -> String {
    violations
        .iter()
        .map(|v| v.describe(u))
        .collect::<Vec<_>>()
        .join(" ")
}

fn violations_json(violations: &[DiscViolation], u: &Universe) -> Value {
    violations
        .iter()
        .map(|v| {
            let (x, y) = v.names(u);
            json!({ "kind": v.kind.as_str(), "pair": [x, y] })
        })
        .collect()
}

fn statement_head(stmt: &Statement) -> String {
    match stmt {
        Statement::Let { name, expr } => format!("let {name} = {expr}"),
        Statement::Eval(expr) => format!("eval {expr}"),
        Statement::AssertDisc(expr) => format!("assert_disc {expr}"),
        Statement::Expect { expr, .. } => format!("expect {expr}"),
    }
}

fn entry_text(entry: &ReportEntry, u: &Universe) -> String {
    let mut line = match &entry.outcome {
        EntryOutcome::Bound { name, value } => format!("let {name} = {value}"),
        EntryOutcome::Value(value) => format!("{} = {value}", statement_head(&entry.statement)),
        EntryOutcome::Disc { value, violations } if violations.is_empty() => {
            format!("{} = {value}: ok", statement_head(&entry.statement))
        }
        EntryOutcome::Disc { value, violations } => format!(
            "{} = {value}: FAILED {}",
            statement_head(&entry.statement),
            violations_text(violations, u)
        ),
        EntryOutcome::Expect { expected, actual } if expected == actual => {
            format!("{} = {actual}: pass", statement_head(&entry.statement))
        }
        EntryOutcome::Expect { expected, actual } => format!(
            "{} = {actual}: FAILED expected {expected}",
            statement_head(&entry.statement)
        ),
        EntryOutcome::Halted(err) => format!("{}: HALTED {err}", entry.statement),
    };
    for note in &entry.notes {
        line.push_str(&format!(
            " [resolved {}: dropped {}]",
            note.step, note.dropped
        ));
    }
    line
}

/// One line per executed statement.
pub fn session_text(report: &SessionReport) -> String {
    let mut out = String::new();
    for entry in &report.entries {
        out.push_str(&entry_text(entry, &report.universe));
        out.push('\n');
    }
    out
}

fn eval_error_json(err: &EvalError) -> Value {
    match err {
        EvalError::UnboundName(name) => json!({ "kind": "unbound-name", "name": name }),
        EvalError::ResolutionFailed {
            step,
            description,
            pairs,
        } => json!({
            "kind": "resolution-failed",
            "step": step,
            "message": description,
            "pairs": pairs.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
        }),
        EvalError::InputNotDisc { step, operand } => {
            json!({ "kind": "input-not-disc", "step": step, "operand": operand })
        }
        EvalError::Algebra(e) => json!({ "kind": "algebra", "message": e.to_string() }),
    }
}

fn entry_json(entry: &ReportEntry, u: &Universe) -> Value {
    let mut v = match &entry.outcome {
        EntryOutcome::Bound { name, value } => {
            json!({ "kind": "let", "name": name, "value": negset_json(value) })
        }
        EntryOutcome::Value(value) => json!({ "kind": "eval", "value": negset_json(value) }),
        EntryOutcome::Disc { value, violations } => json!({
            "kind": "assert_disc",
            "value": negset_json(value),
            "disc": violations.is_empty(),
            "violations": violations_json(violations, u),
        }),
        EntryOutcome::Expect { expected, actual } => json!({
            "kind": "expect",
            "value": negset_json(actual),
            "expected": negset_json(expected),
            "passed": expected == actual,
        }),
        EntryOutcome::Halted(err) => json!({ "kind": "halted", "error": eval_error_json(err) }),
    };
    v["statement"] = Value::from(entry.statement.to_string());
    v["ok"] = Value::from(entry.ok());
    v["resolutions"] = entry
        .notes
        .iter()
        .map(|n| json!({ "step": n.step, "dropped": names(&n.dropped) }))
        .collect();
    v
}

pub fn session_json(report: &SessionReport) -> Value {
    json!({
        "universe": report.universe.names().collect::<Vec<_>>(),
        "policy": report.policy.to_string(),
        "statements": report
            .entries
            .iter()
            .map(|e| entry_json(e, &report.universe))
            .collect::<Vec<_>>(),
    })
}

fn kind_str(kind: CheckedKind) -> &'static str {
    match kind {
        CheckedKind::Agent => "agent",
        CheckedKind::Binding => "binding",
    }
}

pub fn check_text(report: &CheckReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let verdict = if e.violations.is_empty() {
            "DISC".to_string()
        } else {
            format!(
                "not DISC {}",
                violations_text(&e.violations, &report.universe)
            )
        };
        out.push_str(&format!(
            "{} {} = {}: {verdict}\n",
            kind_str(e.kind),
            e.name,
            e.value
        ));
    }
    out
}

pub fn check_json(report: &CheckReport) -> Value {
    json!({
        "universe": report.universe.names().collect::<Vec<_>>(),
        "sets": report.entries.iter().map(|e| json!({
            "name": e.name,
            "kind": kind_str(e.kind),
            "value": negset_json(&e.value),
            "disc": e.violations.is_empty(),
            "violations": violations_json(&e.violations, &report.universe),
        })).collect::<Vec<_>>(),
    })
}

pub fn session_error_json(err: &SessionError) -> Value {
    json!({
        "error": {
            "kind": match err.kind {
                crate::session::ErrorKind::Parse => "parse",
                crate::session::ErrorKind::Validation => "validation",
            },
            "line": err.line,
            "column": err.column,
            "message": err.message,
        }
    })
}

fn verdict_str(report: &LawReport) -> &'static str {
    match report.verdict() {
        Verdict::HoldsEverywhere => "holds-everywhere",
        Verdict::Counterexamples => "counterexamples",
    }
}

fn expectation_str(e: Expectation) -> &'static str {
    match e {
        Expectation::Holds => "holds",
        Expectation::MustFindCounterexample => "must-find-counterexample",
    }
}

pub fn law_text(report: &LawReport) -> String {
    let mut out = format!(
        "{} n={}: {} ({} tuples, {} counterexamples, expected {}) {}\n",
        report.law.as_str(),
        report.universe_size,
        verdict_str(report),
        report.tuples_checked,
        report.counterexamples_found,
        expectation_str(report.law.expectation()),
        if report.matches_expectation() {
            "ok"
        } else {
            "MISMATCH"
        }
    );
    for w in &report.counterexamples {
        out.push_str(&format!("  counterexample: {w}\n"));
    }
    out
}

pub fn law_json(report: &LawReport) -> Value {
    json!({
        "law": report.law.as_str(),
        "size": report.universe_size,
        "tuples_checked": report.tuples_checked,
        "counterexamples_found": report.counterexamples_found,
        "verdict": verdict_str(report),
        "expected": expectation_str(report.law.expectation()),
        "matches": report.matches_expectation(),
        "counterexamples": report
            .counterexamples
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>(),
    })
}

pub fn fixture_text(report: &FixtureReport) -> String {
    let mut out = format!(
        "fixture {}: {}\n",
        report.id,
        if report.passed() { "pass" } else { "FAIL" }
    );
    for c in &report.checks {
        if c.passed() {
            out.push_str(&format!("  {} = {}\n", c.label, c.computed));
        } else {
            out.push_str(&format!(
                "  {} = {} (expected {})\n",
                c.label, c.computed, c.expected
            ));
        }
    }
    for n in &report.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

pub fn fixture_json(report: &FixtureReport) -> Value {
    json!({
        "fixture": report.id,
        "passed": report.passed(),
        "checks": report.checks.iter().map(|c| json!({
            "label": c.label,
            "expected": c.expected,
            "computed": c.computed,
            "passed": c.passed(),
        })).collect::<Vec<_>>(),
        "notes": report.notes,
    })
}

/// Aggregated rows of a `laws --all` run: one per law, sizes merged.
pub fn summary_table(reports: &[LawReport], fixtures: &[FixtureReport]) -> String {
    let mut rows: Vec<(String, String, u64, u64, String, bool)> = Vec::new();
    for r in reports {
        match rows.last_mut() {
            Some(row) if row.0 == r.law.as_str() => {
                row.1 = format!("1..{}", r.universe_size);
                row.2 += r.tuples_checked;
                row.3 += r.counterexamples_found;
                row.5 &= r.matches_expectation();
            }
            _ => rows.push((
                r.law.as_str().to_string(),
                r.universe_size.to_string(),
                r.tuples_checked,
                r.counterexamples_found,
                expectation_str(r.law.expectation()).to_string(),
                r.matches_expectation(),
            )),
        }
    }
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(4).max(40);
    let mut out = format!(
        "{:<width$}  {:>5}  {:>10}  {:>10}  {:<24}  status\n",
        "law", "n", "tuples", "violations", "expected"
    );
    for (law, sizes, tuples, found, expected, ok) in &rows {
        out.push_str(&format!(
            "{law:<width$}  {sizes:>5}  {tuples:>10}  {found:>10}  {expected:<24}  {}\n",
            if *ok { "ok" } else { "MISMATCH" }
        ));
    }
    for f in fixtures {
        out.push_str(&format!(
            "{:<width$}  {:>5}  {:>10}  {:>10}  {:<24}  {}\n",
            format!("fixture {}", f.id),
            "-",
            f.checks.len(),
            "-",
            "pass",
            if f.passed() { "ok" } else { "FAIL" }
        ));
    }
    out
}

//! Command-line front end. [`run`] does all the work and returns the exit
//! code, writing reports to `out` and diagnostics to `err`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use negset_core::oracle::{check_law, verify_fixture, LawId, SweepConfig, FIXTURE_IDS};
use serde_json::{json, Value};

use crate::report;
use crate::session::{check_session, parse_session, run_session, SessionError, SessionScript};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// An expectation, assertion or DISC check failed, or a law sweep
    /// disagreed with its expected verdict.
    pub const FAILED: i32 = 1;
    pub const INVALID_SCRIPT: i32 = 2;
    pub const HALTED: i32 = 3;
    pub const CONFIG: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "negset",
    version,
    about = "Evaluate negotiation-set sessions and sweep algebraic laws"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a session script.
    Eval { path: PathBuf },
    /// Report DISC verdicts for every agent and binding, without resolution.
    Check { path: PathBuf },
    /// Sweep algebraic laws exhaustively.
    Laws(LawsArgs),
    /// Recompute the built-in worked examples.
    Fixtures {
        #[arg(long)]
        id: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct LawsArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub law: Option<String>,
    /// Every law at sizes 1 to its default, plus all fixtures.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub size: Option<usize>,
    /// Counterexamples printed per law.
    #[arg(long, default_value_t = 5)]
    pub limit: usize,
    /// Allow sizes above the per-law caps.
    #[arg(long)]
    pub unsafe_size: bool,
}

fn emit(out: &mut dyn Write, json: Option<Value>, text: String) -> std::io::Result<()> {
    match json {
        Some(v) => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).unwrap_or_default()
        ),
        None => out.write_all(text.as_bytes()),
    }
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::CONFIG
            } else {
                exit::OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval { path } => cmd_eval(path, cli.json, out, err),
        Command::Check { path } => cmd_check(path, cli.json, out, err),
        Command::Laws(args) => cmd_laws(args, cli.json, out, err),
        Command::Fixtures { id } => cmd_fixtures(id.as_deref(), cli.json, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        exit::CONFIG
    })
}

fn load(
    path: &Path,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<Result<SessionScript, i32>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", path.display())?;
            return Ok(Err(exit::CONFIG));
        }
    };
    match parse_session(&text) {
        Ok(script) => Ok(Ok(script)),
        Err(e) => {
            report_script_error(path, &e, json, out, err)?;
            Ok(Err(exit::INVALID_SCRIPT))
        }
    }
}

fn report_script_error(
    path: &Path,
    e: &SessionError,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<()> {
    if json {
        emit(out, Some(report::session_error_json(e)), String::new())?;
    }
    writeln!(
        err,
        "{}:{}:{}: {}",
        path.display(),
        e.line,
        e.column,
        e.message
    )
}

pub fn cmd_eval(
    path: &Path,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let script = match load(path, json, out, err)? {
        Ok(s) => s,
        Err(code) => return Ok(code),
    };
    let rep = run_session(&script);
    emit(
        out,
        json.then(|| report::session_json(&rep)),
        report::session_text(&rep),
    )?;
    Ok(if let Some(e) = rep.halted() {
        writeln!(err, "evaluation halted: {e}")?;
        exit::HALTED
    } else if rep.all_ok() {
        exit::OK
    } else {
        exit::FAILED
    })
}

pub fn cmd_check(
    path: &Path,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let script = match load(path, json, out, err)? {
        Ok(s) => s,
        Err(code) => return Ok(code),
    };
    let rep = match check_session(&script) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "evaluation halted: {e}")?;
            return Ok(exit::HALTED);
        }
    };
    emit(
        out,
        json.then(|| report::check_json(&rep)),
        report::check_text(&rep),
    )?;
    Ok(if rep.all_disc() {
        exit::OK
    } else {
        exit::FAILED
    })
}

pub fn cmd_laws(
    args: &LawsArgs,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let config = SweepConfig {
        limit: args.limit,
        unsafe_size: args.unsafe_size,
    };
    let mut runs: Vec<(LawId, usize)> = Vec::new();
    match &args.law {
        Some(id) => {
            let law: LawId = match id.parse() {
                Ok(l) => l,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(exit::CONFIG);
                }
            };
            runs.push((law, args.size.unwrap_or_else(|| law.default_size())));
        }
        None => {
            for law in LawId::ALL {
                let top = args.size.unwrap_or_else(|| law.default_size());
                runs.extend((1..=top).map(|n| (law, n)));
            }
        }
    }

    let started = Instant::now();
    let mut reports = Vec::new();
    for (law, n) in runs {
        let t = Instant::now();
        match check_law(law, n, None, &config) {
            Ok(mut r) => {
                r.elapsed = Some(t.elapsed());
                writeln!(err, "{} n={n}: {:.3?}", law.as_str(), t.elapsed())?;
                reports.push(r);
            }
            Err(e) => {
                writeln!(err, "error: {}: {e}", law.as_str())?;
                return Ok(exit::CONFIG);
            }
        }
    }
    let mut fixtures = Vec::new();
    if args.all {
        for id in FIXTURE_IDS {
            match verify_fixture(id) {
                Ok(f) => fixtures.push(f),
                Err(e) => {
                    writeln!(err, "error: {id}: {e}")?;
                    return Ok(exit::CONFIG);
                }
            }
        }
        writeln!(err, "total: {:.3?}", started.elapsed())?;
    }

    let ok = reports.iter().all(|r| r.matches_expectation()) && fixtures.iter().all(|f| f.passed());
    let json_value = json.then(|| {
        json!({
            "laws": reports.iter().map(report::law_json).collect::<Vec<_>>(),
            "fixtures": fixtures.iter().map(report::fixture_json).collect::<Vec<_>>(),
            "ok": ok,
        })
    });
    let mut text = String::new();
    for r in &reports {
        text.push_str(&report::law_text(r));
    }
    for f in &fixtures {
        text.push_str(&report::fixture_text(f));
    }
    if args.all {
        text.push('\n');
        text.push_str(&report::summary_table(&reports, &fixtures));
    }
    emit(out, json_value, text)?;
    Ok(if ok { exit::OK } else { exit::FAILED })
}

pub fn cmd_fixtures(
    id: Option<&str>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let ids: Vec<&str> = match id {
        Some(id) => vec![id],
        None => FIXTURE_IDS.to_vec(),
    };
    let mut reports = Vec::new();
    for id in ids {
        match verify_fixture(id) {
            Ok(r) => reports.push(r),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(exit::CONFIG);
            }
        }
    }
    let ok = reports.iter().all(|r| r.passed());
    let json_value = json.then(|| {
        json!({
            "fixtures": reports.iter().map(report::fixture_json).collect::<Vec<_>>(),
            "ok": ok,
        })
    });
    let text: String = reports.iter().map(report::fixture_text).collect();
    emit(out, json_value, text)?;
    Ok(if ok { exit::OK } else { exit::FAILED })
}

//! The session language: scripts that declare a universe, agents and
//! contradictions, then combine agents with the compromise operators.

mod ast;
mod eval;
mod lexer;
mod parser;
mod printer;

use thiserror::Error;

pub use ast::{AgentDecl, Expr, Relation, SessionScript, SetOp, Statement};
pub use eval::{
    check_session, eval_expr, run_session, CheckEntry, CheckReport, CheckedKind, EntryOutcome, Env,
    EvalError, ReportEntry, ResolutionNote, SessionReport,
};
pub use parser::parse_session;
pub use printer::{negset_literal, set_literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
}

/// A script error with its 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SessionError {
    pub kind: ErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SessionError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        SessionError {
            kind: ErrorKind::Parse,
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn validation(line: usize, column: usize, message: impl Into<String>) -> Self {
        SessionError {
            kind: ErrorKind::Validation,
            line,
            column,
            message: message.into(),
        }
    }
}

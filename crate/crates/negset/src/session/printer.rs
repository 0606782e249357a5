//! Canonical text form of sessions; `parse_session` reads it back unchanged.

use std::fmt::{self, Display, Formatter, Write as _};

use negset_core::{FiniteSet, NegotiationSet};

use super::ast::{Expr, Relation, SessionScript, Statement};

/// `{a b c}` in universe order.
pub fn set_literal(set: &FiniteSet) -> String {
    let mut out = String::from("{");
    for (i, name) in set.member_names().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(name);
    }
    out.push('}');
    out
}

/// `[{a} {a b}]`
pub fn negset_literal(set: &NegotiationSet) -> String {
    format!(
        "[{} {}]",
        set_literal(set.necessity()),
        set_literal(set.admissibility())
    )
}

fn is_infix(e: &Expr) -> bool {
    matches!(e, Expr::Binary(..) | Expr::Difference(..))
}

fn write_operand(f: &mut Formatter<'_>, e: &Expr) -> fmt::Result {
    if is_infix(e) {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Expr::AgentRef(name) | Expr::Binding(name) => f.write_str(name),
            Expr::Complement(inner) => {
                f.write_str("not ")?;
                write_operand(f, inner)
            }
            // infix operators share one level and associate left, so only
            // the right operand may need parentheses
            Expr::Difference(l, r) => {
                write!(f, "{l} minus ")?;
                write_operand(f, r)
            }
            Expr::Binary(op, l, r) => {
                write!(f, "{l} {} ", op.keyword())?;
                write_operand(f, r)
            }
            Expr::Nary(op, args) => {
                write!(f, "{}(", op.keyword())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Display for Statement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Let { name, expr } => write!(f, "let {name} = {expr}"),
            Statement::Eval(expr) => write!(f, "eval {expr}"),
            Statement::AssertDisc(expr) => write!(f, "assert_disc {expr}"),
            Statement::Expect { expr, expected } => {
                write!(f, "expect {expr} = {}", negset_literal(expected))
            }
        }
    }
}

impl Display for Relation {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Strong(x, y) => write!(f, "strong {x} {y}"),
            Relation::Weak(x, y) => write!(f, "weak {x} {y}"),
            Relation::Dominance(x, y) => write!(f, "dominance {x} > {y}"),
        }
    }
}

impl Display for SessionScript {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let mut line = String::from("universe");
        for name in self.universe.names() {
            let _ = write!(line, " {name}");
        }
        writeln!(f, "{line}")?;
        for agent in &self.agents {
            writeln!(f, "agent {} = {}", agent.name, negset_literal(&agent.value))?;
        }
        for rel in &self.relations {
            writeln!(f, "{rel}")?;
        }
        if let Some(policy) = &self.policy {
            writeln!(f, "policy {policy}")?;
        }
        for stmt in &self.statements {
            writeln!(f, "{stmt}")?;
        }
        Ok(())
    }
}

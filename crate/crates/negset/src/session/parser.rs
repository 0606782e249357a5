//! Line-oriented recursive-descent parser with validation.

use std::collections::BTreeMap;

use negset_core::{
    ContradictionSpec, FiniteSet, NegotiationSet, ObjectId, Ranking, ResolutionPolicy, Universe,
};

use super::ast::{AgentDecl, Expr, Relation, SessionScript, SetOp, Statement};
use super::lexer::{lex_line, Spanned, Tok};
use super::SessionError;

const RESERVED: &[&str] = &[
    "universe",
    "agent",
    "strong",
    "weak",
    "dominance",
    "policy",
    "let",
    "eval",
    "assert_disc",
    "expect",
    "odot",
    "oplus",
    "union",
    "inter",
    "minus",
    "not",
];

struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.column)
            .unwrap_or(self.end_column)
    }

    fn error(&self, message: impl Into<String>) -> SessionError {
        SessionError::parse(self.line, self.column(), message)
    }

    fn unexpected(&self, wanted: &str) -> SessionError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SessionError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Next word and its column.
    fn word(&mut self, wanted: &str) -> Result<(String, usize), SessionError> {
        match self.toks.get(self.pos) {
            Some(Spanned {
                tok: Tok::Word(w),
                column,
            }) => {
                let out = (w.clone(), *column);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn finish(&self) -> Result<(), SessionError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected("end of line"))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum NameKind {
    Agent,
    Binding,
}

#[derive(Default)]
struct Builder {
    universe: Option<Universe>,
    agents: Vec<AgentDecl>,
    names: BTreeMap<String, NameKind>,
    relations: Vec<Relation>,
    policy: Option<(ResolutionPolicy, usize, usize)>,
    statements: Vec<Statement>,
}

/// Parses and validates a session script.
pub fn parse_session(text: &str) -> Result<SessionScript, SessionError> {
    let mut b = Builder::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex_line(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            toks,
            pos: 0,
            line,
            end_column: raw.chars().count() + 1,
        };
        b.line(&mut c)?;
        c.finish()?;
    }
    b.finish()
}

impl Builder {
    fn universe(&self, c: &Cursor) -> Result<&Universe, SessionError> {
        self.universe.as_ref().ok_or_else(|| {
            SessionError::validation(c.line, 1, "the universe must be declared first")
        })
    }

    fn line(&mut self, c: &mut Cursor) -> Result<(), SessionError> {
        let (keyword, column) = c.word("a declaration or statement")?;
        if keyword != "universe" {
            self.universe(c)?;
        }
        match keyword.as_str() {
            "universe" => self.universe_decl(c, column),
            "agent" => self.agent_decl(c),
            "strong" | "weak" => {
                let (x, _) = c.word("an object name")?;
                let (y, _) = c.word("an object name")?;
                let rel = if keyword == "strong" {
                    Relation::Strong(x, y)
                } else {
                    Relation::Weak(x, y)
                };
                self.relation(c, rel)
            }
            "dominance" => {
                let (x, _) = c.word("an object name")?;
                c.expect(Tok::Gt)?;
                let (y, _) = c.word("an object name")?;
                self.relation(c, Relation::Dominance(x, y))
            }
            "policy" => self.policy_decl(c, column),
            "let" => {
                let (name, col) = c.word("a binding name")?;
                c.expect(Tok::Eq)?;
                let expr = self.expr(c)?;
                self.declare(c, &name, col, NameKind::Binding)?;
                self.statements.push(Statement::Let { name, expr });
                Ok(())
            }
            "eval" => {
                let expr = self.expr(c)?;
                self.statements.push(Statement::Eval(expr));
                Ok(())
            }
            "assert_disc" => {
                let expr = self.expr(c)?;
                self.statements.push(Statement::AssertDisc(expr));
                Ok(())
            }
            "expect" => {
                let expr = self.expr(c)?;
                c.expect(Tok::Eq)?;
                let expected = self.negset_literal(c)?;
                self.statements.push(Statement::Expect { expr, expected });
                Ok(())
            }
            other => Err(SessionError::parse(
                c.line,
                column,
                format!("unknown keyword `{other}`"),
            )),
        }
    }

    fn universe_decl(&mut self, c: &mut Cursor, column: usize) -> Result<(), SessionError> {
        if self.universe.is_some() {
            return Err(SessionError::validation(
                c.line,
                column,
                "the universe is declared more than once",
            ));
        }
        let mut names = Vec::new();
        while c.peek().is_some() {
            names.push(c.word("an object name")?.0);
        }
        let universe = Universe::new(&names)
            .map_err(|e| SessionError::validation(c.line, column, e.to_string()))?;
        self.universe = Some(universe);
        Ok(())
    }

    fn declare(
        &mut self,
        c: &Cursor,
        name: &str,
        column: usize,
        kind: NameKind,
    ) -> Result<(), SessionError> {
        if RESERVED.contains(&name) {
            return Err(SessionError::validation(
                c.line,
                column,
                format!("`{name}` is a reserved word"),
            ));
        }
        if self.names.insert(name.to_string(), kind).is_some() {
            return Err(SessionError::validation(
                c.line,
                column,
                format!("`{name}` is already declared"),
            ));
        }
        Ok(())
    }

    fn agent_decl(&mut self, c: &mut Cursor) -> Result<(), SessionError> {
        let (name, column) = c.word("an agent name")?;
        c.expect(Tok::Eq)?;
        let value = self.negset_literal(c)?;
        self.declare(c, &name, column, NameKind::Agent)?;
        self.agents.push(AgentDecl { name, value });
        Ok(())
    }

    fn relation(&mut self, c: &Cursor, rel: Relation) -> Result<(), SessionError> {
        self.relations.push(rel);
        let universe = self.universe(c)?;
        build_spec(universe, &self.relations)
            .map(|_| ())
            .map_err(|e| SessionError::validation(c.line, 1, e.to_string()))
    }

    fn policy_decl(&mut self, c: &mut Cursor, column: usize) -> Result<(), SessionError> {
        if self.policy.is_some() {
            return Err(SessionError::validation(
                c.line,
                column,
                "the policy is declared more than once",
            ));
        }
        let (kind, kind_col) = c.word("a policy name")?;
        let policy = match kind.as_str() {
            "strict" => ResolutionPolicy::Strict,
            "dominance" => ResolutionPolicy::ObjectDominance,
            "fewest-necessities" => ResolutionPolicy::FewestNecessities,
            "agent-priority" => {
                let mut names = vec![c.word("an agent name")?.0];
                while c.eat(&Tok::Gt) {
                    names.push(c.word("an agent name")?.0);
                }
                let ranking = Ranking::new(names)
                    .map_err(|e| SessionError::validation(c.line, kind_col, e.to_string()))?;
                ResolutionPolicy::AgentPriority(ranking)
            }
            other => {
                return Err(SessionError::parse(
                    c.line,
                    kind_col,
                    format!("unknown policy `{other}`"),
                ))
            }
        };
        self.policy = Some((policy, c.line, kind_col));
        Ok(())
    }

    fn set_literal(&self, c: &mut Cursor) -> Result<FiniteSet, SessionError> {
        let universe = self.universe(c)?.clone();
        c.expect(Tok::LBrace)?;
        let mut ids = Vec::new();
        loop {
            if c.eat(&Tok::RBrace) {
                break;
            }
            let (name, column) = c.word("an object name or `}`")?;
            let id = universe
                .lookup(&name)
                .map_err(|e| SessionError::validation(c.line, column, e.to_string()))?;
            ids.push(id);
            c.eat(&Tok::Comma);
        }
        Ok(FiniteSet::from_ids(&universe, ids))
    }

    fn negset_literal(&self, c: &mut Cursor) -> Result<NegotiationSet, SessionError> {
        let column = c.column();
        c.expect(Tok::LBracket)?;
        let nec = self.set_literal(c)?;
        c.eat(&Tok::Comma);
        let adm = self.set_literal(c)?;
        c.expect(Tok::RBracket)?;
        NegotiationSet::new(nec, adm)
            .map_err(|e| SessionError::validation(c.line, column, e.to_string()))
    }

    fn expr(&self, c: &mut Cursor) -> Result<Expr, SessionError> {
        let mut lhs = self.term(c)?;
        loop {
            let Some(word) = c.peek_word() else {
                return Ok(lhs);
            };
            if word == "minus" {
                c.pos += 1;
                let rhs = self.term(c)?;
                lhs = Expr::Difference(Box::new(lhs), Box::new(rhs));
            } else if let Some(op) = SetOp::from_keyword(word) {
                c.pos += 1;
                let rhs = self.term(c)?;
                lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
            } else {
                return Err(c.unexpected("an operator"));
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Expr, SessionError> {
        if c.eat(&Tok::LParen) {
            let inner = self.expr(c)?;
            c.expect(Tok::RParen)?;
            return Ok(inner);
        }
        let (word, column) = c.word("an operand")?;
        if word == "not" {
            return Ok(Expr::Complement(Box::new(self.term(c)?)));
        }
        if let Some(op) = SetOp::from_keyword(&word) {
            c.expect(Tok::LParen)?;
            let mut args = vec![self.expr(c)?];
            while c.eat(&Tok::Comma) {
                args.push(self.expr(c)?);
            }
            c.expect(Tok::RParen)?;
            return Ok(Expr::Nary(op, args));
        }
        if word == "minus" {
            return Err(SessionError::parse(
                c.line,
                column,
                "`minus` needs a left operand",
            ));
        }
        match self.names.get(&word) {
            Some(NameKind::Agent) => Ok(Expr::AgentRef(word)),
            Some(NameKind::Binding) => Ok(Expr::Binding(word)),
            None => Err(SessionError::validation(
                c.line,
                column,
                format!("unknown name `{word}`"),
            )),
        }
    }

    fn finish(self) -> Result<SessionScript, SessionError> {
        let universe = self
            .universe
            .ok_or_else(|| SessionError::validation(1, 1, "missing universe declaration"))?;
        let policy = match self.policy {
            None => None,
            Some((policy, line, column)) => {
                if let ResolutionPolicy::AgentPriority(ranking) = &policy {
                    for name in ranking.names() {
                        if !self.agents.iter().any(|a| &a.name == name) {
                            return Err(SessionError::validation(
                                line,
                                column,
                                format!("ranking names unknown agent `{name}`"),
                            ));
                        }
                    }
                    for agent in &self.agents {
                        if ranking.position(&agent.name).is_none() {
                            return Err(SessionError::validation(
                                line,
                                column,
                                format!("ranking does not cover agent `{}`", agent.name),
                            ));
                        }
                    }
                }
                Some(policy)
            }
        };
        let spec = build_spec(&universe, &self.relations)
            .map_err(|e| SessionError::validation(1, 1, e.to_string()))?;
        Ok(SessionScript {
            universe,
            agents: self.agents,
            relations: self.relations,
            policy,
            statements: self.statements,
            spec,
        })
    }
}

/// Builds the contradiction spec; dominance lines are closed transitively.
pub(crate) fn build_spec(
    universe: &Universe,
    relations: &[Relation],
) -> negset_core::Result<ContradictionSpec> {
    let mut strong = Vec::new();
    let mut weak = Vec::new();
    let mut dominance = Vec::new();
    for rel in relations {
        match rel {
            Relation::Strong(x, y) => strong.push((universe.lookup(x)?, universe.lookup(y)?)),
            Relation::Weak(x, y) => weak.push((universe.lookup(x)?, universe.lookup(y)?)),
            Relation::Dominance(x, y) => dominance.push((universe.lookup(x)?, universe.lookup(y)?)),
        }
    }
    let dominance = if dominance.is_empty() {
        None
    } else {
        Some(transitive_closure(universe.len(), &dominance))
    };
    ContradictionSpec::from_ids(universe, strong, weak, dominance)
}

fn transitive_closure(n: usize, pairs: &[(ObjectId, ObjectId)]) -> Vec<(ObjectId, ObjectId)> {
    let mut reach = vec![vec![false; n]; n];
    for &(x, y) in pairs {
        reach[x.0][y.0] = true;
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut() {
            if row[k] {
                for (r, &v) in row.iter_mut().zip(&via) {
                    *r |= v;
                }
            }
        }
    }
    let mut out = Vec::new();
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                out.push((ObjectId(i), ObjectId(j)));
            }
        }
    }
    out
}

//! Evaluation of session scripts.

use std::collections::{BTreeMap, BTreeSet};

use negset_core::{
    resolve_odot, ContradictionSpec, DiscViolation, FiniteSet, NegotiationSet, ResolutionFailure,
    ResolutionOutcome, ResolutionPolicy, Universe,
};
use thiserror::Error;

use super::ast::{Expr, SessionScript, SetOp, Statement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("resolution failed at {step}: {description}")]
    ResolutionFailed {
        step: String,
        description: String,
        /// Offending pairs by object name.
        pairs: Vec<(String, String)>,
    },
    #[error("operand {operand} at {step} is outside DISC")]
    InputNotDisc { step: String, operand: String },
    #[error(transparent)]
    Algebra(#[from] negset_core::Error),
}

impl EvalError {
    fn resolution(step: String, failure: &ResolutionFailure, universe: &Universe) -> Self {
        let pairs = failure
            .violations
            .iter()
            .map(|v| {
                let (x, y) = v.names(universe);
                (x.to_string(), y.to_string())
            })
            .collect();
        EvalError::ResolutionFailed {
            step,
            description: failure.describe(universe),
            pairs,
        }
    }
}

/// An `⊙` step whose result was repaired by dropping admissible objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionNote {
    pub step: String,
    pub dropped: FiniteSet,
}

/// Named values together with the agents that contributed to them.
#[derive(Debug, Clone, Default)]
pub struct Env {
    values: BTreeMap<String, (NegotiationSet, BTreeSet<String>)>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn with_agents(script: &SessionScript) -> Self {
        let mut env = Env::new();
        for agent in &script.agents {
            env.insert_agent(&agent.name, agent.value.clone());
        }
        env
    }

    pub fn insert_agent(&mut self, name: &str, value: NegotiationSet) {
        let sources = BTreeSet::from([name.to_string()]);
        self.values.insert(name.to_string(), (value, sources));
    }

    fn bind(&mut self, name: &str, value: NegotiationSet, sources: BTreeSet<String>) {
        self.values.insert(name.to_string(), (value, sources));
    }

    pub fn get(&self, name: &str) -> Option<&NegotiationSet> {
        self.values.get(name).map(|(v, _)| v)
    }
}

struct Evaluator<'a> {
    env: &'a Env,
    spec: &'a ContradictionSpec,
    policy: &'a ResolutionPolicy,
    resolve: bool,
    notes: Vec<ResolutionNote>,
}

struct Traced {
    value: NegotiationSet,
    sources: BTreeSet<String>,
}

fn single(sources: &BTreeSet<String>) -> Option<&str> {
    if sources.len() == 1 {
        sources.iter().next().map(String::as_str)
    } else {
        None
    }
}

impl Evaluator<'_> {
    fn eval(&mut self, e: &Expr) -> Result<Traced, EvalError> {
        match e {
            Expr::AgentRef(name) | Expr::Binding(name) => {
                let (value, sources) = self
                    .env
                    .values
                    .get(name)
                    .ok_or_else(|| EvalError::UnboundName(name.clone()))?;
                Ok(Traced {
                    value: value.clone(),
                    sources: sources.clone(),
                })
            }
            Expr::Complement(inner) => {
                let t = self.eval(inner)?;
                Ok(Traced {
                    value: t.value.complement(),
                    sources: t.sources,
                })
            }
            Expr::Difference(l, r) => {
                let l = self.eval(l)?;
                let r = self.eval(r)?;
                Ok(Traced {
                    value: l.value.difference(&r.value)?,
                    sources: l.sources.union(&r.sources).cloned().collect(),
                })
            }
            Expr::Binary(op, l, r) => {
                let lt = self.eval(l)?;
                let rt = self.eval(r)?;
                self.step(*op, lt, rt, || e.to_string())
            }
            Expr::Nary(op, args) => {
                let mut iter = args.iter();
                let first = iter.next().ok_or(negset_core::Error::EmptyFamily)?;
                let mut acc = self.eval(first)?;
                for (i, arg) in iter.enumerate() {
                    let next = self.eval(arg)?;
                    let label = || Expr::Nary(*op, args[..i + 2].to_vec()).to_string();
                    acc = self.step(*op, acc, next, label)?;
                }
                Ok(acc)
            }
        }
    }

    fn step(
        &mut self,
        op: SetOp,
        l: Traced,
        r: Traced,
        label: impl Fn() -> String,
    ) -> Result<Traced, EvalError> {
        let sources: BTreeSet<String> = l.sources.union(&r.sources).cloned().collect();
        let value = match op {
            SetOp::Union => l.value.union(&r.value)?,
            SetOp::Inter => l.value.inter(&r.value)?,
            SetOp::Oplus => l.value.oplus(&r.value)?,
            SetOp::Odot if !self.resolve => l.value.odot(&r.value)?,
            SetOp::Odot => {
                let agents = single(&l.sources).zip(single(&r.sources));
                let outcome = resolve_odot(&l.value, &r.value, self.spec, self.policy, agents)
                    .map_err(|err| match err {
                        negset_core::Error::InputNotDisc(operand) => EvalError::InputNotDisc {
                            step: label(),
                            operand,
                        },
                        other => EvalError::Algebra(other),
                    })?;
                match outcome {
                    ResolutionOutcome::Resolved { result, dropped } => {
                        if !dropped.is_empty() {
                            self.notes.push(ResolutionNote {
                                step: label(),
                                dropped,
                            });
                        }
                        result
                    }
                    ResolutionOutcome::Failed(failure) => {
                        return Err(EvalError::resolution(
                            label(),
                            &failure,
                            self.spec.universe(),
                        ))
                    }
                }
            }
        };
        Ok(Traced { value, sources })
    }
}

/// Evaluates `e` bottom-up. Every `⊙` step goes through [`resolve_odot`]
/// when `spec` declares any relation.
pub fn eval_expr(
    e: &Expr,
    env: &Env,
    spec: &ContradictionSpec,
    policy: &ResolutionPolicy,
) -> Result<NegotiationSet, EvalError> {
    eval_traced(e, env, spec, policy, spec.has_relations()).map(|(t, _)| t.value)
}

fn eval_traced(
    e: &Expr,
    env: &Env,
    spec: &ContradictionSpec,
    policy: &ResolutionPolicy,
    resolve: bool,
) -> Result<(Traced, Vec<ResolutionNote>), EvalError> {
    let mut ev = Evaluator {
        env,
        spec,
        policy,
        resolve,
        notes: Vec::new(),
    };
    let t = ev.eval(e)?;
    Ok((t, ev.notes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryOutcome {
    Bound {
        name: String,
        value: NegotiationSet,
    },
    Value(NegotiationSet),
    Disc {
        value: NegotiationSet,
        violations: Vec<DiscViolation>,
    },
    Expect {
        expected: NegotiationSet,
        actual: NegotiationSet,
    },
    Halted(EvalError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub statement: Statement,
    pub outcome: EntryOutcome,
    pub notes: Vec<ResolutionNote>,
}

impl ReportEntry {
    /// False for a failed assertion or expectation and for the halting entry.
    pub fn ok(&self) -> bool {
        match &self.outcome {
            EntryOutcome::Bound { .. } | EntryOutcome::Value(_) => true,
            EntryOutcome::Disc { violations, .. } => violations.is_empty(),
            EntryOutcome::Expect { expected, actual } => expected == actual,
            EntryOutcome::Halted(_) => false,
        }
    }
}

/// One entry per executed statement in script order; a halting statement
/// is the last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionReport {
    pub universe: Universe,
    pub policy: ResolutionPolicy,
    pub entries: Vec<ReportEntry>,
}

impl SessionReport {
    pub fn halted(&self) -> Option<&EvalError> {
        self.entries.last().and_then(|e| match &e.outcome {
            EntryOutcome::Halted(err) => Some(err),
            _ => None,
        })
    }

    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(ReportEntry::ok)
    }
}

/// Runs every statement, continuing past failed checks and stopping at the
/// first evaluation error.
pub fn run_session(script: &SessionScript) -> SessionReport {
    let policy = script.effective_policy();
    let resolve = script.spec.has_relations();
    let mut env = Env::with_agents(script);
    let mut entries = Vec::new();
    for stmt in &script.statements {
        let expr = match stmt {
            Statement::Let { expr, .. }
            | Statement::Eval(expr)
            | Statement::AssertDisc(expr)
            | Statement::Expect { expr, .. } => expr,
        };
        let (traced, notes) = match eval_traced(expr, &env, &script.spec, &policy, resolve) {
            Ok(r) => r,
            Err(err) => {
                entries.push(ReportEntry {
                    statement: stmt.clone(),
                    outcome: EntryOutcome::Halted(err),
                    notes: Vec::new(),
                });
                break;
            }
        };
        let outcome = match stmt {
            Statement::Let { name, .. } => {
                env.bind(name, traced.value.clone(), traced.sources);
                EntryOutcome::Bound {
                    name: name.clone(),
                    value: traced.value,
                }
            }
            Statement::Eval(_) => EntryOutcome::Value(traced.value),
            Statement::AssertDisc(_) => {
                let violations = script
                    .spec
                    .disc_violations(&traced.value)
                    .unwrap_or_default();
                EntryOutcome::Disc {
                    value: traced.value,
                    violations,
                }
            }
            Statement::Expect { expected, .. } => EntryOutcome::Expect {
                expected: expected.clone(),
                actual: traced.value,
            },
        };
        entries.push(ReportEntry {
            statement: stmt.clone(),
            outcome,
            notes,
        });
    }
    SessionReport {
        universe: script.universe.clone(),
        policy,
        entries,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckedKind {
    Agent,
    Binding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub kind: CheckedKind,
    pub value: NegotiationSet,
    pub violations: Vec<DiscViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub universe: Universe,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn all_disc(&self) -> bool {
        self.entries.iter().all(|e| e.violations.is_empty())
    }
}

/// DISC verdicts for every agent and `let` binding, with `⊙` computed raw
/// so that inconsistent results stay visible.
pub fn check_session(script: &SessionScript) -> Result<CheckReport, EvalError> {
    let policy = ResolutionPolicy::Strict;
    let mut env = Env::with_agents(script);
    let mut entries = Vec::new();
    for agent in &script.agents {
        entries.push(CheckEntry {
            name: agent.name.clone(),
            kind: CheckedKind::Agent,
            value: agent.value.clone(),
            violations: script.spec.disc_violations(&agent.value)?,
        });
    }
    for stmt in &script.statements {
        if let Statement::Let { name, expr } = stmt {
            let (traced, _) = eval_traced(expr, &env, &script.spec, &policy, false)?;
            entries.push(CheckEntry {
                name: name.clone(),
                kind: CheckedKind::Binding,
                value: traced.value.clone(),
                violations: script.spec.disc_violations(&traced.value)?,
            });
            env.bind(name, traced.value, traced.sources);
        }
    }
    Ok(CheckReport {
        universe: script.universe.clone(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_session;

    const TRIP: &str = "\
universe a b c d e f g h i k l
agent A = [{a d} {a d f g h}]
agent B = [{a b d} {a b d f i l}]
agent C = [{a h} {a d h k}]
let S1 = (A odot B) odot C
let S2 = (A oplus B) oplus C
expect S1 = [{a} {a b d f g h i k l}]
expect A oplus B = [{a d} {a d f}]
expect S2 = [{a d} {a d}]
";

    fn run(text: &str) -> SessionReport {
        run_session(&parse_session(text).unwrap())
    }

    #[test]
    fn trip_script_evaluates() {
        let r = run(TRIP);
        assert_eq!(r.entries.len(), 5);
        assert!(r.all_ok());
        let EntryOutcome::Bound { value, .. } = &r.entries[0].outcome else {
            panic!()
        };
        assert_eq!(value.to_string(), "[{a},{a,b,d,f,g,h,i,k,l}]");
    }

    #[test]
    fn failing_expect_continues() {
        let r = run("universe a\nagent A = [{a} {a}]\nexpect A = [{} {a}]\neval A");
        assert_eq!(r.entries.len(), 2);
        assert!(!r.entries[0].ok());
        assert!(r.halted().is_none());
    }

    const CONFLICT: &str = "universe a b\nstrong a b\nagent A = [{a} {a}]\nagent B = [{b} {b}]\n";

    #[test]
    fn strict_conflict_halts_with_pair() {
        let r = run(&format!("{CONFLICT}let R = A odot B\neval A"));
        assert_eq!(r.entries.len(), 1);
        match r.halted() {
            Some(EvalError::ResolutionFailed { pairs, step, .. }) => {
                assert_eq!(pairs, &vec![("a".to_string(), "b".to_string())]);
                assert_eq!(step, "A odot B");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dominance_resolves_and_notes_drop() {
        let r = run(&format!(
            "{CONFLICT}dominance a > b\npolicy dominance\neval A odot B"
        ));
        assert!(r.all_ok());
        assert_eq!(r.entries[0].notes.len(), 1);
        assert_eq!(r.entries[0].notes[0].dropped.to_string(), "{b}");
        assert_eq!(
            r.entries[0].outcome,
            EntryOutcome::Value(
                NegotiationSet::from_names(&r.universe, [] as [&str; 0], ["a"]).unwrap()
            )
        );
    }

    #[test]
    fn agent_priority_uses_single_contributors() {
        let base = format!("{CONFLICT}policy agent-priority B > A\n");
        let r = run(&format!("{base}eval A odot B"));
        assert!(r.all_ok());
        assert_eq!(r.entries[0].notes[0].dropped.to_string(), "{a}");
        let r = run(&format!("{base}let X = A union A\neval X odot B"));
        assert!(r.all_ok());
        let r = run(&format!("{base}eval (A union B) odot B"));
        assert!(r.halted().is_some());
    }

    #[test]
    fn non_disc_operand_is_rejected() {
        let r = run("universe a b\nweak a b\nagent A = [{a} {a b}]\neval A odot A");
        assert!(matches!(r.halted(), Some(EvalError::InputNotDisc { .. })));
    }

    #[test]
    fn check_mode_skips_resolution() {
        let s = parse_session(&format!("{CONFLICT}let R = A odot B")).unwrap();
        let c = check_session(&s).unwrap();
        assert_eq!(c.entries.len(), 3);
        assert!(c.entries[0].violations.is_empty());
        assert!(c.entries[1].violations.is_empty());
        assert_eq!(c.entries[2].violations.len(), 1);
        assert!(!c.all_disc());
    }

    #[test]
    fn nary_odot_is_a_left_fold() {
        let r = run(
            "universe a b c\nagent A = [{a} {a b}]\nagent B = [{b} {b c}]\nagent C = [{a b} {a b c}]\n\
             expect odot(A, B, C) = [{} {a b c}]\nexpect oplus(A, B, C) = [{b} {b}]",
        );
        assert!(r.all_ok(), "{r:?}");
    }
}

//! Contradiction relations between objects and the class of negotiation sets
//! admitted to discussion (DISC).
//!
//! A set `A` is in DISC when no strongly contradictory pair lies inside `A²`
//! and no weakly contradictory pair inside `A²` has a member in `A¹`. DISC is
//! closed under `⊕` but not under `⊙`; [`resolve_odot`] repairs a `⊙` result
//! according to a [`ResolutionPolicy`].

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::negset::NegotiationSet;
use crate::universe::{FiniteSet, ObjectId, Universe};

/// Symmetric, irreflexive strong (`⚡`) and weak (`≀`) contradiction relations,
/// plus an optional strict dominance order between objects.
#[derive(Clone, PartialEq, Eq)]
pub struct ContradictionSpec {
    universe: Universe,
    // Unordered pairs stored as (lower id, higher id).
    strong: BTreeSet<(ObjectId, ObjectId)>,
    weak: BTreeSet<(ObjectId, ObjectId)>,
    // Ordered pairs (greater, lesser).
    dominance: Option<BTreeSet<(ObjectId, ObjectId)>>,
}

fn unordered(x: ObjectId, y: ObjectId) -> (ObjectId, ObjectId) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

impl ContradictionSpec {
    /// A spec with no relations at all; every negotiation set is in DISC.
    pub fn empty(universe: &Universe) -> Self {
        ContradictionSpec {
            universe: universe.clone(),
            strong: BTreeSet::new(),
            weak: BTreeSet::new(),
            dominance: None,
        }
    }

    /// Builds a spec from object names. Dominance pairs read `(greater, lesser)`.
    pub fn new<S: AsRef<str>>(
        universe: &Universe,
        strong: &[(S, S)],
        weak: &[(S, S)],
        dominance: Option<&[(S, S)]>,
    ) -> Result<Self> {
        let ids = |pairs: &[(S, S)]| -> Result<Vec<(ObjectId, ObjectId)>> {
            pairs
                .iter()
                .map(|(x, y)| Ok((universe.lookup(x.as_ref())?, universe.lookup(y.as_ref())?)))
                .collect()
        };
        let dominance = match dominance {
            Some(d) => Some(ids(d)?),
            None => None,
        };
        ContradictionSpec::from_ids(universe, ids(strong)?, ids(weak)?, dominance)
    }

    pub fn from_ids<I, J, K>(
        universe: &Universe,
        strong: I,
        weak: J,
        dominance: Option<K>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (ObjectId, ObjectId)>,
        J: IntoIterator<Item = (ObjectId, ObjectId)>,
        K: IntoIterator<Item = (ObjectId, ObjectId)>,
    {
        let check = |(x, y): (ObjectId, ObjectId)| -> Result<(ObjectId, ObjectId)> {
            for id in [x, y] {
                if id.0 >= universe.len() {
                    return Err(Error::UnknownObject(format!("#{}", id.0)));
                }
            }
            if x == y {
                return Err(Error::ReflexivePair(universe.name(x).to_string()));
            }
            Ok(unordered(x, y))
        };
        let strong = strong
            .into_iter()
            .map(check)
            .collect::<Result<BTreeSet<_>>>()?;
        let weak = weak
            .into_iter()
            .map(check)
            .collect::<Result<BTreeSet<_>>>()?;
        if let Some(&(x, y)) = strong.intersection(&weak).next() {
            return Err(Error::OverlappingKinds(
                universe.name(x).to_string(),
                universe.name(y).to_string(),
            ));
        }
        let dominance = match dominance {
            None => None,
            Some(pairs) => Some(validate_dominance(universe, pairs)?),
        };
        Ok(ContradictionSpec {
            universe: universe.clone(),
            strong,
            weak,
            dominance,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn has_relations(&self) -> bool {
        !self.strong.is_empty() || !self.weak.is_empty()
    }

    pub fn strong_pairs(&self) -> impl Iterator<Item = (ObjectId, ObjectId)> + '_ {
        self.strong.iter().copied()
    }

    pub fn weak_pairs(&self) -> impl Iterator<Item = (ObjectId, ObjectId)> + '_ {
        self.weak.iter().copied()
    }

    pub fn dominance_pairs(&self) -> Option<impl Iterator<Item = (ObjectId, ObjectId)> + '_> {
        self.dominance.as_ref().map(|d| d.iter().copied())
    }

    pub fn is_strong(&self, x: ObjectId, y: ObjectId) -> bool {
        self.strong.contains(&unordered(x, y))
    }

    pub fn is_weak(&self, x: ObjectId, y: ObjectId) -> bool {
        self.weak.contains(&unordered(x, y))
    }

    /// `x > y` in the dominance order.
    pub fn dominates(&self, x: ObjectId, y: ObjectId) -> bool {
        self.dominance.as_ref().is_some_and(|d| d.contains(&(x, y)))
    }

    pub fn is_disc(&self, set: &NegotiationSet) -> Result<bool> {
        self.universe.ensure_same(set.universe())?;
        let (nec, adm) = (set.necessity(), set.admissibility());
        let strong_ok = self
            .strong
            .iter()
            .all(|&(x, y)| !(adm.contains(x) && adm.contains(y)));
        let weak_ok = self.weak.iter().all(|&(x, y)| {
            !(adm.contains(x) && adm.contains(y) && (nec.contains(x) || nec.contains(y)))
        });
        Ok(strong_ok && weak_ok)
    }

    /// Every offending pair exactly once: strong violations first, then weak,
    /// each in universe order.
    pub fn disc_violations(&self, set: &NegotiationSet) -> Result<Vec<DiscViolation>> {
        self.universe.ensure_same(set.universe())?;
        let (nec, adm) = (set.necessity(), set.admissibility());
        let mut out = Vec::new();
        for &(x, y) in &self.strong {
            if adm.contains(x) && adm.contains(y) {
                out.push(DiscViolation {
                    kind: ViolationKind::StrongInAdmissibility,
                    pair: (x, y),
                });
            }
        }
        for &(x, y) in &self.weak {
            if adm.contains(x) && adm.contains(y) && (nec.contains(x) || nec.contains(y)) {
                out.push(DiscViolation {
                    kind: ViolationKind::WeakWithNecessity,
                    pair: (x, y),
                });
            }
        }
        Ok(out)
    }
}

fn validate_dominance<K>(universe: &Universe, pairs: K) -> Result<BTreeSet<(ObjectId, ObjectId)>>
where
    K: IntoIterator<Item = (ObjectId, ObjectId)>,
{
    let mut order = BTreeSet::new();
    for (x, y) in pairs {
        for id in [x, y] {
            if id.0 >= universe.len() {
                return Err(Error::UnknownObject(format!("#{}", id.0)));
            }
        }
        order.insert((x, y));
    }
    let name = |id: ObjectId| universe.name(id);
    for &(x, y) in &order {
        if x == y {
            return Err(Error::DominanceNotStrictOrder(format!(
                "{} > {} is reflexive",
                name(x),
                name(y)
            )));
        }
        if order.contains(&(y, x)) {
            return Err(Error::DominanceNotStrictOrder(format!(
                "{} > {} and {} > {}",
                name(x),
                name(y),
                name(y),
                name(x)
            )));
        }
    }
    for &(x, y) in &order {
        for &(_, z) in order.range((y, ObjectId(0))..=(y, ObjectId(usize::MAX))) {
            if !order.contains(&(x, z)) {
                return Err(Error::DominanceNotStrictOrder(format!(
                    "{} > {} > {} but not {} > {}",
                    name(x),
                    name(y),
                    name(z),
                    name(x),
                    name(z)
                )));
            }
        }
    }
    Ok(order)
}

impl fmt::Debug for ContradictionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = &self.universe;
        let names = |pairs: &BTreeSet<(ObjectId, ObjectId)>| -> Vec<(&str, &str)> {
            pairs.iter().map(|&(x, y)| (u.name(x), u.name(y))).collect()
        };
        f.debug_struct("ContradictionSpec")
            .field("strong", &names(&self.strong))
            .field("weak", &names(&self.weak))
            .field("dominance", &self.dominance.as_ref().map(names))
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    StrongInAdmissibility,
    WeakWithNecessity,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::StrongInAdmissibility => "strong-in-admissibility",
            ViolationKind::WeakWithNecessity => "weak-with-necessity",
        }
    }
}

/// One contradictory pair that keeps a set out of DISC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscViolation {
    pub kind: ViolationKind,
    pub pair: (ObjectId, ObjectId),
}

impl DiscViolation {
    pub fn names<'u>(&self, universe: &'u Universe) -> (&'u str, &'u str) {
        (universe.name(self.pair.0), universe.name(self.pair.1))
    }

    /// `strong(a,b)` or `weak(a,b)`.
    pub fn describe(&self, universe: &Universe) -> String {
        let (x, y) = self.names(universe);
        let tag = match self.kind {
            ViolationKind::StrongInAdmissibility => "strong",
            ViolationKind::WeakWithNecessity => "weak",
        };
        format!("{tag}({x},{y})")
    }
}

/// Total order over agent names, highest priority first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ranking(Vec<String>);

impl Ranking {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRanking("ranking is empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidRanking(format!("`{n}` is ranked twice")));
            }
        }
        Ok(Ranking(names))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    /// Position in the ranking; 0 is the highest priority.
    pub fn position(&self, agent: &str) -> Option<usize> {
        self.0.iter().position(|n| n == agent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum ResolutionPolicy {
    /// Any `⊙` result outside DISC fails the round.
    #[default]
    Strict,
    /// Of each strongly contradictory pair keep the dominating object.
    ObjectDominance,
    /// Keep what the higher-ranked operand admits.
    AgentPriority(Ranking),
    /// The operand with strictly fewer necessities takes priority.
    FewestNecessities,
}

impl fmt::Display for ResolutionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionPolicy::Strict => f.write_str("strict"),
            ResolutionPolicy::ObjectDominance => f.write_str("dominance"),
            ResolutionPolicy::AgentPriority(r) => {
                f.write_str("agent-priority")?;
                for (i, n) in r.names().iter().enumerate() {
                    if i > 0 {
                        f.write_str(" >")?;
                    }
                    write!(f, " {n}")?;
                }
                Ok(())
            }
            ResolutionPolicy::FewestNecessities => f.write_str("fewest-necessities"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    /// The strict policy permits no repair.
    StrictPolicy,
    /// A violating strong pair is not ordered by dominance.
    UnorderedPair(ObjectId, ObjectId),
    /// It is unclear which operand contributed which object, or operands
    /// have no single agent name.
    AmbiguousProvenance,
    /// Both operands have the same number of necessities.
    Incomparable { left: usize, right: usize },
    /// Violations remain after all drops.
    StillInconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionFailure {
    pub reason: FailureReason,
    /// All violations of the unresolved `⊙` result.
    pub violations: Vec<DiscViolation>,
}

impl ResolutionFailure {
    pub fn describe(&self, universe: &Universe) -> String {
        let reason = match &self.reason {
            FailureReason::StrictPolicy => "strict policy".to_string(),
            FailureReason::UnorderedPair(x, y) => format!(
                "pair ({},{}) is not ordered by dominance",
                universe.name(*x),
                universe.name(*y)
            ),
            FailureReason::AmbiguousProvenance => "ambiguous provenance".to_string(),
            FailureReason::Incomparable { left, right } => {
                format!("incomparable operands ({left} vs {right} necessities)")
            }
            FailureReason::StillInconsistent => "violations remain after drops".to_string(),
        };
        let pairs: Vec<String> = self
            .violations
            .iter()
            .map(|v| v.describe(universe))
            .collect();
        format!("{reason}: {}", pairs.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolutionOutcome {
    Resolved {
        result: NegotiationSet,
        /// Objects removed from the admissibility of the raw `⊙` result.
        dropped: FiniteSet,
    },
    Failed(ResolutionFailure),
}

impl ResolutionOutcome {
    pub fn is_resolved(&self) -> bool {
        matches!(self, ResolutionOutcome::Resolved { .. })
    }
}

/// Computes `a ⊙ b` and, if the result leaves DISC, repairs it under `policy`.
///
/// `agents` names the two operands; it is consulted only by
/// [`ResolutionPolicy::AgentPriority`].
pub fn resolve_odot(
    a: &NegotiationSet,
    b: &NegotiationSet,
    spec: &ContradictionSpec,
    policy: &ResolutionPolicy,
    agents: Option<(&str, &str)>,
) -> Result<ResolutionOutcome> {
    a.universe().ensure_same(b.universe())?;
    spec.universe.ensure_same(a.universe())?;
    for operand in [a, b] {
        if !spec.is_disc(operand)? {
            return Err(Error::InputNotDisc(operand.to_string()));
        }
    }
    let raw = a.odot(b)?;
    let violations = spec.disc_violations(&raw)?;
    if violations.is_empty() {
        let dropped = FiniteSet::empty(raw.universe());
        return Ok(ResolutionOutcome::Resolved {
            result: raw,
            dropped,
        });
    }
    let fail = |reason| {
        Ok(ResolutionOutcome::Failed(ResolutionFailure {
            reason,
            violations: violations.clone(),
        }))
    };
    let strong = violations
        .iter()
        .filter(|v| v.kind == ViolationKind::StrongInAdmissibility)
        .map(|v| v.pair);

    let mut dropped = FiniteSet::empty(raw.universe());
    match policy {
        ResolutionPolicy::Strict => return fail(FailureReason::StrictPolicy),
        ResolutionPolicy::ObjectDominance => {
            for (x, y) in strong {
                if spec.dominates(x, y) {
                    dropped = dropped.with(y);
                } else if spec.dominates(y, x) {
                    dropped = dropped.with(x);
                } else {
                    return fail(FailureReason::UnorderedPair(x, y));
                }
            }
        }
        ResolutionPolicy::AgentPriority(ranking) => {
            let Some((left, right)) = agents else {
                return fail(FailureReason::AmbiguousProvenance);
            };
            let rank = |name: &str| {
                ranking
                    .position(name)
                    .ok_or_else(|| Error::UnrankedAgent(name.to_string()))
            };
            let (l, r) = (rank(left)?, rank(right)?);
            let higher = match l.cmp(&r) {
                core::cmp::Ordering::Less => a,
                core::cmp::Ordering::Greater => b,
                core::cmp::Ordering::Equal => return fail(FailureReason::AmbiguousProvenance),
            };
            match drops_favoring(higher, strong) {
                Some(d) => dropped = d,
                None => return fail(FailureReason::AmbiguousProvenance),
            }
        }
        ResolutionPolicy::FewestNecessities => {
            let (l, r) = (a.necessity().len(), b.necessity().len());
            let higher = match l.cmp(&r) {
                core::cmp::Ordering::Less => a,
                core::cmp::Ordering::Greater => b,
                core::cmp::Ordering::Equal => {
                    return fail(FailureReason::Incomparable { left: l, right: r })
                }
            };
            match drops_favoring(higher, strong) {
                Some(d) => dropped = d,
                None => return fail(FailureReason::AmbiguousProvenance),
            }
        }
    }

    // Necessary objects are never dropped for DISC operands; anything else
    // means the result cannot be repaired.
    let Ok(result) = raw.drop_admissible(&dropped) else {
        return fail(FailureReason::StillInconsistent);
    };
    if !spec.is_disc(&result)? {
        return fail(FailureReason::StillInconsistent);
    }
    Ok(ResolutionOutcome::Resolved { result, dropped })
}

// Keep the member of each pair that `higher` admits; None when that is not
// exactly one of the two.
fn drops_favoring(
    higher: &NegotiationSet,
    pairs: impl Iterator<Item = (ObjectId, ObjectId)>,
) -> Option<FiniteSet> {
    let adm = higher.admissibility();
    let mut dropped = FiniteSet::empty(higher.universe());
    for (x, y) in pairs {
        match (adm.contains(x), adm.contains(y)) {
            (true, false) => dropped = dropped.with(y),
            (false, true) => dropped = dropped.with(x),
            _ => return None,
        }
    }
    Some(dropped)
}

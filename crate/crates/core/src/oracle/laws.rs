//! The law catalog: each law is a predicate over a tuple space with an
//! expected verdict.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::consistency::{ContradictionSpec, ViolationKind};
use crate::error::{Error, Result};
use crate::negset::{InclusionMode, NegotiationSet, SpecialKind};
use crate::universe::{FiniteSet, ObjectId, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LawId {
    IdempotenceOdot,
    IdempotenceOplus,
    CommutativityOdot,
    CommutativityOplus,
    AssociativityOdot,
    AssociativityOplus,
    AbsorptionOplusOdot,
    AbsorptionOdotOplus,
    DistributivityOplusOverOdot,
    DistributivityOdotOverOplus,
    BoundsUpper,
    BoundsLower,
    DemorganWeak1,
    DemorganWeak2,
    DemorganWeak3,
    DemorganWeak4,
    FoldAgreementOdot,
    FoldAgreementOplus,
    IdentityLemmas,
    PointLemmas,
    DiscClosureOplus,
    DiscOdotWeakPartial,
    ComplementInvolution,
}

/// What a sweep is expected to find.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expectation {
    Holds,
    MustFindCounterexample,
}

/// The tuples a law quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TupleSpace {
    /// All k-tuples of negotiation sets.
    Sets(usize),
    /// Ordered pairs of distinct objects.
    ObjectPairs,
    /// Pairs of DISC sets, per contradiction spec.
    DiscPairs,
}

impl LawId {
    pub const ALL: [LawId; 23] = [
        LawId::IdempotenceOdot,
        LawId::IdempotenceOplus,
        LawId::CommutativityOdot,
        LawId::CommutativityOplus,
        LawId::AssociativityOdot,
        LawId::AssociativityOplus,
        LawId::AbsorptionOplusOdot,
        LawId::AbsorptionOdotOplus,
        LawId::DistributivityOplusOverOdot,
        LawId::DistributivityOdotOverOplus,
        LawId::BoundsUpper,
        LawId::BoundsLower,
        LawId::DemorganWeak1,
        LawId::DemorganWeak2,
        LawId::DemorganWeak3,
        LawId::DemorganWeak4,
        LawId::FoldAgreementOdot,
        LawId::FoldAgreementOplus,
        LawId::IdentityLemmas,
        LawId::PointLemmas,
        LawId::DiscClosureOplus,
        LawId::DiscOdotWeakPartial,
        LawId::ComplementInvolution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::IdempotenceOdot => "idempotence-odot",
            LawId::IdempotenceOplus => "idempotence-oplus",
            LawId::CommutativityOdot => "commutativity-odot",
            LawId::CommutativityOplus => "commutativity-oplus",
            LawId::AssociativityOdot => "associativity-odot",
            LawId::AssociativityOplus => "associativity-oplus",
            LawId::AbsorptionOplusOdot => "absorption-oplus-odot",
            LawId::AbsorptionOdotOplus => "absorption-odot-oplus",
            LawId::DistributivityOplusOverOdot => "distributivity-oplus-over-odot",
            LawId::DistributivityOdotOverOplus => "distributivity-odot-over-oplus",
            LawId::BoundsUpper => "bounds-upper",
            LawId::BoundsLower => "bounds-lower",
            LawId::DemorganWeak1 => "demorgan-weak-1",
            LawId::DemorganWeak2 => "demorgan-weak-2",
            LawId::DemorganWeak3 => "demorgan-weak-3",
            LawId::DemorganWeak4 => "demorgan-weak-4",
            LawId::FoldAgreementOdot => "fold-agreement-odot",
            LawId::FoldAgreementOplus => "fold-agreement-oplus",
            LawId::IdentityLemmas => "identity-lemmas",
            LawId::PointLemmas => "point-lemmas",
            LawId::DiscClosureOplus => "disc-closure-oplus",
            LawId::DiscOdotWeakPartial => "disc-odot-weak-partial",
            LawId::ComplementInvolution => "complement-involution",
        }
    }

    /// Human-readable statement of the law.
    pub fn statement(self) -> &'static str {
        match self {
            LawId::IdempotenceOdot => "A ⊙ A = A",
            LawId::IdempotenceOplus => "A ⊕ A = A",
            LawId::CommutativityOdot => "A ⊙ B = B ⊙ A",
            LawId::CommutativityOplus => "A ⊕ B = B ⊕ A",
            LawId::AssociativityOdot => "(A ⊙ B) ⊙ C = A ⊙ (B ⊙ C)",
            LawId::AssociativityOplus => "(A ⊕ B) ⊕ C = A ⊕ (B ⊕ C)",
            LawId::AbsorptionOplusOdot => "A ⊕ (A ⊙ B) = A",
            LawId::AbsorptionOdotOplus => "A ⊙ (A ⊕ B) = A",
            LawId::DistributivityOplusOverOdot => "A ⊕ (B ⊙ C) = (A ⊕ B) ⊙ (A ⊕ C)",
            LawId::DistributivityOdotOverOplus => "A ⊙ (B ⊕ C) = (A ⊙ B) ⊕ (A ⊙ C)",
            LawId::BoundsUpper => "A, B ⊆ C ⇒ ⊙{A,B} ⊆ ∪{A,B} ⊆ C",
            LawId::BoundsLower => "C ⊆ A, B ⇒ C ⊆ ∩{A,B} ⊆ ⊕{A,B}",
            LawId::DemorganWeak1 => "-⊙F ⊆¹ ⊕(-F)",
            LawId::DemorganWeak2 => "⊕(-F) ⊆² -⊙F",
            LawId::DemorganWeak3 => "⊙(-F) ⊆¹ -⊕F",
            LawId::DemorganWeak4 => "-⊕F ⊆² ⊙(-F)",
            LawId::FoldAgreementOdot => "⊙F = left fold of binary ⊙",
            LawId::FoldAgreementOplus => "⊕F = left fold of binary ⊕",
            LawId::IdentityLemmas => "identities for ∅_N, X_N and X_P",
            LawId::PointLemmas => "x,y points: ⊕ gives [∅,∅], ⊙ gives [∅,{x,y}]",
            LawId::DiscClosureOplus => "A, B ∈ DISC ⇒ A ⊕ B ∈ DISC",
            LawId::DiscOdotWeakPartial => "A, B ∈ DISC ⇒ A ⊙ B has no weak violation",
            LawId::ComplementInvolution => "-(-A) = A",
        }
    }

    pub fn expectation(self) -> Expectation {
        match self {
            LawId::AbsorptionOdotOplus
            | LawId::DistributivityOplusOverOdot
            | LawId::DistributivityOdotOverOplus => Expectation::MustFindCounterexample,
            _ => Expectation::Holds,
        }
    }

    pub fn space(self) -> TupleSpace {
        match self {
            LawId::IdempotenceOdot
            | LawId::IdempotenceOplus
            | LawId::IdentityLemmas
            | LawId::ComplementInvolution => TupleSpace::Sets(1),
            LawId::CommutativityOdot
            | LawId::CommutativityOplus
            | LawId::AbsorptionOplusOdot
            | LawId::AbsorptionOdotOplus => TupleSpace::Sets(2),
            LawId::AssociativityOdot
            | LawId::AssociativityOplus
            | LawId::DistributivityOplusOverOdot
            | LawId::DistributivityOdotOverOplus
            | LawId::BoundsUpper
            | LawId::BoundsLower
            | LawId::DemorganWeak1
            | LawId::DemorganWeak2
            | LawId::DemorganWeak3
            | LawId::DemorganWeak4
            | LawId::FoldAgreementOdot
            | LawId::FoldAgreementOplus => TupleSpace::Sets(3),
            LawId::PointLemmas => TupleSpace::ObjectPairs,
            LawId::DiscClosureOplus | LawId::DiscOdotWeakPartial => TupleSpace::DiscPairs,
        }
    }

    /// Largest universe swept without an explicit override.
    pub fn size_cap(self) -> usize {
        match self.space() {
            TupleSpace::Sets(1) | TupleSpace::Sets(2) => 5,
            TupleSpace::Sets(_) => 4,
            TupleSpace::ObjectPairs => super::DEFAULT_ENUMERATION_CAP,
            TupleSpace::DiscPairs => 3,
        }
    }

    /// Universe size used when none is requested.
    pub fn default_size(self) -> usize {
        match self {
            LawId::AbsorptionOdotOplus => 2,
            LawId::FoldAgreementOdot | LawId::FoldAgreementOplus => 3,
            LawId::PointLemmas => 5,
            _ => self.size_cap(),
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LawId::ALL
            .iter()
            .copied()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLaw(s.into()))
    }
}

/// A tuple on which a law was evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Sets(Vec<NegotiationSet>),
    Points {
        universe: Universe,
        x: ObjectId,
        y: ObjectId,
    },
    Disc {
        spec: Box<ContradictionSpec>,
        a: NegotiationSet,
        b: NegotiationSet,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Sets(sets) => {
                for (i, (label, set)) in ["A", "B", "C"].iter().zip(sets).enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{label}={set}")?;
                }
                Ok(())
            }
            Witness::Points { universe, x, y } => {
                write!(f, "x={}, y={}", universe.name(*x), universe.name(*y))
            }
            Witness::Disc { spec, a, b } => {
                let u = spec.universe();
                f.write_str("strong{")?;
                let strong: Vec<_> = spec.strong_pairs().collect();
                for (i, (x, y)) in strong.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}{}", u.name(*x), u.name(*y))?;
                }
                f.write_str("} weak{")?;
                let weak: Vec<_> = spec.weak_pairs().collect();
                for (i, (x, y)) in weak.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}{}", u.name(*x), u.name(*y))?;
                }
                write!(f, "}}, A={a}, B={b}")
            }
        }
    }
}

fn fold(
    sets: &[NegotiationSet],
    op: fn(&NegotiationSet, &NegotiationSet) -> Result<NegotiationSet>,
) -> Result<NegotiationSet> {
    let (first, rest) = sets.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter().try_fold(first.clone(), |acc, s| op(&acc, s))
}

fn complements(sets: &[NegotiationSet]) -> Vec<NegotiationSet> {
    sets.iter().map(NegotiationSet::complement).collect()
}

/// Evaluates a set-tuple law. `sets` must have the law's arity.
pub fn sets_hold(law: LawId, sets: &[NegotiationSet]) -> Result<bool> {
    use InclusionMode::*;
    let arity = match law.space() {
        TupleSpace::Sets(k) => k,
        _ => return Err(Error::UnknownLaw(law.as_str().into())),
    };
    assert_eq!(sets.len(), arity, "wrong arity for {law}");
    let a = &sets[0];
    Ok(match law {
        LawId::IdempotenceOdot => a.odot(a)? == *a,
        LawId::IdempotenceOplus => a.oplus(a)? == *a,
        LawId::CommutativityOdot => a.odot(&sets[1])? == sets[1].odot(a)?,
        LawId::CommutativityOplus => a.oplus(&sets[1])? == sets[1].oplus(a)?,
        LawId::AssociativityOdot => {
            let (b, c) = (&sets[1], &sets[2]);
            a.odot(b)?.odot(c)? == a.odot(&b.odot(c)?)?
        }
        LawId::AssociativityOplus => {
            let (b, c) = (&sets[1], &sets[2]);
            a.oplus(b)?.oplus(c)? == a.oplus(&b.oplus(c)?)?
        }
        LawId::AbsorptionOplusOdot => a.oplus(&a.odot(&sets[1])?)? == *a,
        LawId::AbsorptionOdotOplus => a.odot(&a.oplus(&sets[1])?)? == *a,
        LawId::DistributivityOplusOverOdot => {
            let (b, c) = (&sets[1], &sets[2]);
            a.oplus(&b.odot(c)?)? == a.oplus(b)?.odot(&a.oplus(c)?)?
        }
        LawId::DistributivityOdotOverOplus => {
            let (b, c) = (&sets[1], &sets[2]);
            a.odot(&b.oplus(c)?)? == a.odot(b)?.oplus(&a.odot(c)?)?
        }
        LawId::BoundsUpper => {
            let (family, bound) = (&sets[..2], &sets[2]);
            let premise = family
                .iter()
                .map(|s| s.included(bound, Full))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|x| x);
            let union = NegotiationSet::union_all(family)?;
            !premise
                || (NegotiationSet::odot_all(family)?.included(&union, Full)?
                    && union.included(bound, Full)?)
        }
        LawId::BoundsLower => {
            let (family, bound) = (&sets[..2], &sets[2]);
            let premise = family
                .iter()
                .map(|s| bound.included(s, Full))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|x| x);
            let inter = NegotiationSet::inter_all(family)?;
            !premise
                || (bound.included(&inter, Full)?
                    && inter.included(&NegotiationSet::oplus_all(family)?, Full)?)
        }
        LawId::DemorganWeak1 => NegotiationSet::odot_all(sets)?.complement().included(
            &NegotiationSet::oplus_all(&complements(sets))?,
            NecessityOnly,
        )?,
        LawId::DemorganWeak2 => NegotiationSet::oplus_all(&complements(sets))?.included(
            &NegotiationSet::odot_all(sets)?.complement(),
            AdmissibilityOnly,
        )?,
        LawId::DemorganWeak3 => NegotiationSet::odot_all(&complements(sets))?.included(
            &NegotiationSet::oplus_all(sets)?.complement(),
            NecessityOnly,
        )?,
        LawId::DemorganWeak4 => NegotiationSet::oplus_all(sets)?.complement().included(
            &NegotiationSet::odot_all(&complements(sets))?,
            AdmissibilityOnly,
        )?,
        LawId::FoldAgreementOdot => (1..=sets.len()).try_fold(true, |ok, k| {
            Ok::<_, Error>(
                ok && NegotiationSet::odot_all(&sets[..k])?
                    == fold(&sets[..k], NegotiationSet::odot)?,
            )
        })?,
        LawId::FoldAgreementOplus => (1..=sets.len()).try_fold(true, |ok, k| {
            Ok::<_, Error>(
                ok && NegotiationSet::oplus_all(&sets[..k])?
                    == fold(&sets[..k], NegotiationSet::oplus)?,
            )
        })?,
        LawId::IdentityLemmas => {
            let u = a.universe();
            let empty_n = NegotiationSet::special(u, &SpecialKind::EmptyN)?;
            let full_n = NegotiationSet::special(u, &SpecialKind::FullN)?;
            let half = NegotiationSet::special(u, &SpecialKind::HalfEmpty)?;
            let nec_x = NegotiationSet::new(a.necessity().clone(), FiniteSet::full(u))?;
            let empty_adm = NegotiationSet::new(FiniteSet::empty(u), a.admissibility().clone())?;
            let adm_adm =
                NegotiationSet::new(a.admissibility().clone(), a.admissibility().clone())?;
            a.odot(&full_n)? == nec_x
                && a.odot(&empty_n)? == empty_adm
                && a.oplus(&full_n)? == adm_adm
                && a.oplus(&empty_n)? == empty_n
                && a.odot(&half)? == half
                && a.oplus(&half)? == *a
        }
        LawId::ComplementInvolution => a.complement().complement() == *a,
        LawId::PointLemmas | LawId::DiscClosureOplus | LawId::DiscOdotWeakPartial => {
            unreachable!("not a set-tuple law")
        }
    })
}

/// Point lemma for distinct objects `x`, `y`.
pub fn points_hold(universe: &Universe, x: ObjectId, y: ObjectId) -> Result<bool> {
    let half = |o: ObjectId| {
        NegotiationSet::special(universe, &SpecialKind::PointHalf(universe.name(o).into()))
    };
    let one = |o: ObjectId| {
        NegotiationSet::special(universe, &SpecialKind::PointFull(universe.name(o).into()))
    };
    let bottom = NegotiationSet::special(universe, &SpecialKind::EmptyN)?;
    let both = NegotiationSet::new(
        FiniteSet::empty(universe),
        FiniteSet::from_ids(universe, [x, y]),
    )?;
    let combos = [
        (half(x)?, half(y)?),
        (half(x)?, one(y)?),
        (one(x)?, one(y)?),
    ];
    for (p, q) in &combos {
        if p.oplus(q)? != bottom || p.odot(q)? != both {
            return Ok(false);
        }
    }
    Ok(true)
}

/// DISC law for a pair; pairs with a non-DISC member hold vacuously.
pub fn disc_holds(
    law: LawId,
    spec: &ContradictionSpec,
    a: &NegotiationSet,
    b: &NegotiationSet,
) -> Result<bool> {
    if !spec.is_disc(a)? || !spec.is_disc(b)? {
        return Ok(true);
    }
    match law {
        LawId::DiscClosureOplus => spec.is_disc(&a.oplus(b)?),
        LawId::DiscOdotWeakPartial => Ok(spec
            .disc_violations(&a.odot(b)?)?
            .iter()
            .all(|v| v.kind != ViolationKind::WeakWithNecessity)),
        _ => Err(Error::UnknownLaw(law.as_str().into())),
    }
}

impl LawId {
    /// True when `witness` is a genuine violation of this law.
    pub fn violated_by(self, witness: &Witness) -> Result<bool> {
        let holds = match (self.space(), witness) {
            (TupleSpace::Sets(k), Witness::Sets(sets)) if sets.len() == k => sets_hold(self, sets)?,
            (TupleSpace::ObjectPairs, Witness::Points { universe, x, y }) if x != y => {
                points_hold(universe, *x, *y)?
            }
            (TupleSpace::DiscPairs, Witness::Disc { spec, a, b }) => disc_holds(self, spec, a, b)?,
            _ => return Ok(false),
        };
        Ok(!holds)
    }
}

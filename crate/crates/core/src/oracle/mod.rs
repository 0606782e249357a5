//! Exhaustive verification of algebraic laws over small universes.
//!
//! Every law is swept over all tuples of its arity drawn from the full
//! enumeration of negotiation sets. DISC laws additionally range over every
//! labelling of object pairs as strong, weak or unrelated.

mod enumerate;
mod fixtures;
mod laws;

use alloc::format;
use alloc::vec::Vec;
use core::time::Duration;

pub use enumerate::{
    enumerate_negsets, enumerate_negsets_capped, DEFAULT_ENUMERATION_CAP, MAX_ENUMERATION_SIZE,
};
pub use fixtures::{verify_fixture, FixtureCheck, FixtureReport, FIXTURE_IDS};
pub use laws::{disc_holds, points_hold, sets_hold, Expectation, LawId, TupleSpace, Witness};

use crate::consistency::ContradictionSpec;
use crate::error::{Error, Result};
use crate::negset::NegotiationSet;
use crate::universe::{ObjectId, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Counterexamples kept in the report; all are counted.
    pub limit: usize,
    /// Ignore the per-law size caps.
    pub unsafe_size: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            limit: 5,
            unsafe_size: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    HoldsEverywhere,
    Counterexamples,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: LawId,
    pub universe_size: usize,
    pub tuples_checked: u64,
    pub counterexamples_found: u64,
    /// The first `limit` counterexamples in sweep order.
    pub counterexamples: Vec<Witness>,
    /// Filled in by callers that can read a clock.
    pub elapsed: Option<Duration>,
}

impl LawReport {
    pub fn verdict(&self) -> Verdict {
        if self.counterexamples_found == 0 {
            Verdict::HoldsEverywhere
        } else {
            Verdict::Counterexamples
        }
    }

    pub fn matches_expectation(&self) -> bool {
        match self.law.expectation() {
            Expectation::Holds => self.counterexamples_found == 0,
            Expectation::MustFindCounterexample => self.counterexamples_found > 0,
        }
    }
}

/// Universe `{a, b, c, ...}` of `n` objects (`o26`, `o27`, ... past `z`).
pub fn synthetic_universe(n: usize) -> Result<Universe> {
    Universe::new((0..n).map(|i| {
        if i < 26 {
            format!("{}", (b'a' + i as u8) as char)
        } else {
            format!("o{i}")
        }
    }))
}

/// Every contradiction spec over `universe` without dominance:
/// each unordered pair is strong, weak or unrelated (`3^(n(n-1)/2)` specs).
pub fn all_contradiction_specs(universe: &Universe) -> Result<Vec<ContradictionSpec>> {
    let n = universe.len();
    let pairs: Vec<(ObjectId, ObjectId)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (ObjectId(i), ObjectId(j))))
        .collect();
    let total = 3u64
        .checked_pow(pairs.len() as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or(Error::UniverseTooLarge { size: n, cap: 5 })?;
    let mut specs = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut strong = Vec::new();
        let mut weak = Vec::new();
        for &pair in &pairs {
            match code % 3 {
                1 => strong.push(pair),
                2 => weak.push(pair),
                _ => {}
            }
            code /= 3;
        }
        specs.push(ContradictionSpec::from_ids(
            universe,
            strong,
            weak,
            None::<[(ObjectId, ObjectId); 0]>,
        )?);
    }
    Ok(specs)
}

struct Tally {
    checked: u64,
    found: u64,
    kept: Vec<Witness>,
    limit: usize,
}

impl Tally {
    fn record(&mut self, holds: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !holds {
            self.found += 1;
            if self.kept.len() < self.limit {
                self.kept.push(witness());
            }
        }
    }
}

/// Sweeps `law` over a universe of `n` objects.
///
/// For DISC laws, `spec` restricts the sweep to one contradiction spec (whose
/// universe must have `n` objects); without it every spec is tried.
pub fn check_law(
    law: LawId,
    n: usize,
    spec: Option<&ContradictionSpec>,
    config: &SweepConfig,
) -> Result<LawReport> {
    let cap = if config.unsafe_size {
        MAX_ENUMERATION_SIZE
    } else {
        law.size_cap()
    };
    if n > cap {
        return Err(Error::UniverseTooLarge { size: n, cap });
    }
    let universe = match spec {
        Some(s) if s.universe().len() != n => return Err(Error::UniverseMismatch),
        Some(s) => s.universe().clone(),
        None => synthetic_universe(n)?,
    };
    let mut tally = Tally {
        checked: 0,
        found: 0,
        kept: Vec::new(),
        limit: config.limit,
    };

    match law.space() {
        TupleSpace::Sets(arity) => {
            let sets = enumerate_negsets_capped(&universe, cap)?;
            let mut idx = alloc::vec![0usize; arity];
            let mut tuple: Vec<NegotiationSet> = idx.iter().map(|&i| sets[i].clone()).collect();
            loop {
                let holds = sets_hold(law, &tuple)?;
                tally.record(holds, || Witness::Sets(tuple.clone()));
                // odometer over indices, last position fastest
                let mut pos = arity;
                loop {
                    if pos == 0 {
                        return Ok(finish(law, n, tally));
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < sets.len() {
                        tuple[pos] = sets[idx[pos]].clone();
                        break;
                    }
                    idx[pos] = 0;
                    tuple[pos] = sets[0].clone();
                }
            }
        }
        TupleSpace::ObjectPairs => {
            for x in universe.objects() {
                for y in universe.objects().filter(|&y| y != x) {
                    let holds = points_hold(&universe, x, y)?;
                    tally.record(holds, || Witness::Points {
                        universe: universe.clone(),
                        x,
                        y,
                    });
                }
            }
        }
        TupleSpace::DiscPairs => {
            let specs = match spec {
                Some(s) => alloc::vec![s.clone()],
                None => all_contradiction_specs(&universe)?,
            };
            let sets = enumerate_negsets_capped(&universe, cap)?;
            for spec in &specs {
                let disc: Vec<&NegotiationSet> = sets
                    .iter()
                    .filter(|s| spec.is_disc(s).unwrap_or(false))
                    .collect();
                for &a in &disc {
                    for &b in &disc {
                        let holds = disc_holds(law, spec, a, b)?;
                        tally.record(holds, || Witness::Disc {
                            spec: alloc::boxed::Box::new(spec.clone()),
                            a: a.clone(),
                            b: b.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(finish(law, n, tally))
}

fn finish(law: LawId, n: usize, tally: Tally) -> LawReport {
    LawReport {
        law,
        universe_size: n,
        tuples_checked: tally.checked,
        counterexamples_found: tally.found,
        counterexamples: tally.kept,
        elapsed: None,
    }
}

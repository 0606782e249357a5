//! Negotiation sets: pairs `[N, P]` of subsets of a finite universe with
//! `N ⊆ P`, combined by the compromise operators `⊙` and `⊕`.
//!
//! The crate is `no_std` and needs only `alloc`. It provides
//!
//! * [`Universe`], [`FiniteSet`] and [`NegotiationSet`] with every operation
//!   of the algebra,
//! * [`consistency`]: contradiction relations, the DISC class and
//!   resolution policies for `⊙` results,
//! * [`oracle`]: exhaustive law sweeps and built-in worked examples.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bits;
pub mod consistency;
mod error;
mod negset;
pub mod oracle;
mod universe;

pub use consistency::{
    resolve_odot, ContradictionSpec, DiscViolation, FailureReason, Ranking, ResolutionFailure,
    ResolutionOutcome, ResolutionPolicy, ViolationKind,
};
pub use error::{Error, Result};
pub use negset::{InclusionMode, NegotiationSet, SpecialKind};
pub use universe::{FiniteSet, ObjectId, Universe};

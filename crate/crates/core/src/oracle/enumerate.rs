use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::negset::NegotiationSet;
use crate::universe::{FiniteSet, Universe};

/// Largest universe [`enumerate_negsets`] accepts by default (3^12 sets).
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Hard limit for mask-based enumeration.
pub const MAX_ENUMERATION_SIZE: usize = 32;

/// All negotiation sets over `universe`, each exactly once.
///
/// Admissibility ranges over subsets in increasing mask order; for each, the
/// necessity ranges over its subsets in increasing mask order. There are
/// `3^n` of them.
pub fn enumerate_negsets(universe: &Universe) -> Result<Vec<NegotiationSet>> {
    enumerate_negsets_capped(universe, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_negsets_capped(universe: &Universe, cap: usize) -> Result<Vec<NegotiationSet>> {
    let n = universe.len();
    let cap = cap.min(MAX_ENUMERATION_SIZE);
    if n > cap {
        return Err(Error::UniverseTooLarge { size: n, cap });
    }
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    for adm in 0u64..(1 << n) {
        let adm_set = FiniteSet::from_mask(universe, adm);
        let mut nec = 0u64;
        loop {
            let nec_set = FiniteSet::from_mask(universe, nec);
            out.push(NegotiationSet::new(nec_set, adm_set.clone())?);
            // next subset of `adm` in increasing order
            nec = nec.wrapping_sub(adm) & adm;
            if nec == 0 {
                break;
            }
        }
    }
    Ok(out)
}

//! Fixed-width membership bitsets.
//!
//! Width is decided by the owning universe; all binary operations assume both
//! operands have the same width, which callers check through the universe.

use smallvec::SmallVec;

type Block = u64;
const BLOCK_BITS: usize = Block::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits {
    len: usize,
    blocks: SmallVec<[Block; 2]>,
}

impl Bits {
    pub(crate) fn empty(len: usize) -> Self {
        Bits {
            len,
            blocks: SmallVec::from_elem(0, len.div_ceil(BLOCK_BITS)),
        }
    }

    pub(crate) fn full(len: usize) -> Self {
        let mut bits = Bits {
            len,
            blocks: SmallVec::from_elem(!0, len.div_ceil(BLOCK_BITS)),
        };
        bits.trim();
        bits
    }

    /// Builds a set from the low `len` bits of `mask`. Only for `len <= 64`.
    pub(crate) fn from_mask(len: usize, mask: u64) -> Self {
        debug_assert!(len <= BLOCK_BITS);
        let mut bits = Bits::empty(len);
        if let Some(first) = bits.blocks.first_mut() {
            *first = mask;
        }
        bits.trim();
        bits
    }

    // Clear padding bits past `len` in the last block.
    fn trim(&mut self) {
        let rem = self.len % BLOCK_BITS;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1 << rem) - 1;
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn contains(&self, index: usize) -> bool {
        index < self.len && self.blocks[index / BLOCK_BITS] & (1 << (index % BLOCK_BITS)) != 0
    }

    pub(crate) fn insert(&mut self, index: usize) {
        debug_assert!(index < self.len);
        self.blocks[index / BLOCK_BITS] |= 1 << (index % BLOCK_BITS);
    }

    pub(crate) fn remove(&mut self, index: usize) {
        debug_assert!(index < self.len);
        self.blocks[index / BLOCK_BITS] &= !(1 << (index % BLOCK_BITS));
    }

    fn zip_with(&self, other: &Bits, f: impl Fn(Block, Block) -> Block) -> Bits {
        debug_assert_eq!(self.len, other.len);
        let mut out = Bits {
            len: self.len,
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        };
        out.trim();
        out
    }

    pub(crate) fn union(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a | b)
    }

    pub(crate) fn intersection(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & b)
    }

    pub(crate) fn difference(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & !b)
    }

    pub(crate) fn complement(&self) -> Bits {
        let mut out = Bits {
            len: self.len,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        out.trim();
        out
    }

    pub(crate) fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub(crate) fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Member indices in increasing order.
    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut rest = block;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * BLOCK_BITS + bit)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn full_is_trimmed_to_width() {
        let b = Bits::full(70);
        assert_eq!(b.count(), 70);
        assert!(b.contains(69));
        assert!(!b.contains(70));
        assert!(b.complement().is_empty());
    }

    #[test]
    fn iter_crosses_block_boundary() {
        let mut b = Bits::empty(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), [0, 63, 64, 129]);
        b.remove(64);
        assert_eq!(b.count(), 3);
    }

    #[test]
    fn from_mask_drops_high_bits() {
        let b = Bits::from_mask(3, 0b1111_0101);
        assert_eq!(b.iter().collect::<Vec<_>>(), [0, 2]);
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn subset_and_difference() {
        let a = Bits::from_mask(4, 0b0011);
        let b = Bits::from_mask(4, 0b0111);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(b.difference(&a), Bits::from_mask(4, 0b0100));
        assert_eq!(a.union(&b), b);
        assert_eq!(a.intersection(&b), a);
    }
}

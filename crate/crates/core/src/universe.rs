//! Universes of named objects and crisp subsets of them.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Position of an object in its universe's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub usize);

#[derive(Debug)]
struct UniverseInner {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

/// A non-empty, ordered collection of distinct object names.
///
/// Cloning is cheap; clones share the same name table.
#[derive(Clone)]
pub struct Universe(Arc<UniverseInner>);

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut ordered = Vec::new();
        let mut index = BTreeMap::new();
        for name in names {
            let name = name.as_ref();
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidName(name.to_string()));
            }
            if index.insert(name.to_string(), ordered.len()).is_some() {
                return Err(Error::DuplicateName(name.to_string()));
            }
            ordered.push(name.to_string());
        }
        if ordered.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        Ok(Universe(Arc::new(UniverseInner {
            names: ordered,
            index,
        })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.0.names.iter().map(String::as_str)
    }

    pub fn name(&self, id: ObjectId) -> &str {
        &self.0.names[id.0]
    }

    pub fn lookup(&self, name: &str) -> Result<ObjectId> {
        self.0
            .index
            .get(name)
            .map(|&i| ObjectId(i))
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjectId> {
        (0..self.len()).map(ObjectId)
    }

    pub(crate) fn ensure_same(&self, other: &Universe) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// A subset of a universe.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSet {
    universe: Universe,
    bits: Bits,
}

impl FiniteSet {
    pub fn empty(universe: &Universe) -> Self {
        FiniteSet {
            universe: universe.clone(),
            bits: Bits::empty(universe.len()),
        }
    }

    pub fn full(universe: &Universe) -> Self {
        FiniteSet {
            universe: universe.clone(),
            bits: Bits::full(universe.len()),
        }
    }

    pub fn from_names<I, S>(universe: &Universe, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = FiniteSet::empty(universe);
        for name in names {
            let id = universe.lookup(name.as_ref())?;
            set.bits.insert(id.0);
        }
        Ok(set)
    }

    pub fn from_ids<I>(universe: &Universe, ids: I) -> Self
    where
        I: IntoIterator<Item = ObjectId>,
    {
        let mut set = FiniteSet::empty(universe);
        for id in ids {
            assert!(id.0 < universe.len(), "object index out of range");
            set.bits.insert(id.0);
        }
        set
    }

    /// Members given as the low bits of `mask`; universe must have at most 64 objects.
    pub fn from_mask(universe: &Universe, mask: u64) -> Self {
        assert!(
            universe.len() <= 64,
            "mask construction needs at most 64 objects"
        );
        FiniteSet {
            universe: universe.clone(),
            bits: Bits::from_mask(universe.len(), mask),
        }
    }

    pub(crate) fn from_bits(universe: &Universe, bits: Bits) -> Self {
        debug_assert_eq!(bits.len(), universe.len());
        FiniteSet {
            universe: universe.clone(),
            bits,
        }
    }

    pub(crate) fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn contains(&self, id: ObjectId) -> bool {
        self.bits.contains(id.0)
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.universe
            .lookup(name)
            .map(|id| self.contains(id))
            .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Members in universe order.
    pub fn members(&self) -> impl Iterator<Item = ObjectId> + '_ {
        self.bits.iter().map(ObjectId)
    }

    pub fn member_names(&self) -> impl Iterator<Item = &str> + '_ {
        self.members().map(|id| self.universe.name(id))
    }

    pub fn is_subset(&self, other: &FiniteSet) -> Result<bool> {
        self.universe.ensure_same(&other.universe)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn union(&self, other: &FiniteSet) -> Result<FiniteSet> {
        self.universe.ensure_same(&other.universe)?;
        Ok(FiniteSet::from_bits(
            &self.universe,
            self.bits.union(&other.bits),
        ))
    }

    pub fn intersection(&self, other: &FiniteSet) -> Result<FiniteSet> {
        self.universe.ensure_same(&other.universe)?;
        Ok(FiniteSet::from_bits(
            &self.universe,
            self.bits.intersection(&other.bits),
        ))
    }

    pub fn difference(&self, other: &FiniteSet) -> Result<FiniteSet> {
        self.universe.ensure_same(&other.universe)?;
        Ok(FiniteSet::from_bits(
            &self.universe,
            self.bits.difference(&other.bits),
        ))
    }

    pub fn complement(&self) -> FiniteSet {
        FiniteSet::from_bits(&self.universe, self.bits.complement())
    }

    pub fn with(&self, id: ObjectId) -> FiniteSet {
        let mut out = self.clone();
        out.bits.insert(id.0);
        out
    }

    pub fn without(&self, id: ObjectId) -> FiniteSet {
        let mut out = self.clone();
        out.bits.remove(id.0);
        out
    }
}

/// Canonical form: `{a,b,c}` in universe order, `{}` when empty.
impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, name) in self.member_names().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(name)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn make_universe_examples() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        assert_eq!(u.len(), 3);
        assert_eq!(u.lookup("c").unwrap(), ObjectId(2));
        assert_eq!(
            Universe::new::<[&str; 0], &str>([]),
            Err(Error::EmptyUniverse)
        );
        assert_eq!(
            Universe::new(["a", "a"]),
            Err(Error::DuplicateName("a".into()))
        );
        assert_eq!(
            Universe::new(["a b"]),
            Err(Error::InvalidName("a b".into()))
        );
        assert_eq!(Universe::new([""]), Err(Error::InvalidName("".into())));
    }

    #[test]
    fn universes_compare_by_names() {
        let u = Universe::new(["a", "b"]).unwrap();
        let v = Universe::new(["a", "b"]).unwrap();
        let w = Universe::new(["b", "a"]).unwrap();
        assert_eq!(u, v);
        assert_ne!(u, w);
        let x = FiniteSet::full(&u);
        let y = FiniteSet::full(&w);
        assert_eq!(x.union(&y), Err(Error::UniverseMismatch));
    }

    #[test]
    fn display_follows_universe_order() {
        let u = Universe::new(["z", "y", "x"]).unwrap();
        let s = FiniteSet::from_names(&u, ["x", "z"]).unwrap();
        assert_eq!(format!("{s}"), "{z,x}");
        assert_eq!(format!("{}", FiniteSet::empty(&u)), "{}");
        assert_eq!(
            FiniteSet::from_names(&u, ["q"]),
            Err(Error::UnknownObject("q".into()))
        );
    }
}

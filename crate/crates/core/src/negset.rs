//! Negotiation sets and their operations.
//!
//! A negotiation set is a pair `[N, P]` of subsets of one universe with
//! `N ⊆ P`: `N` holds what an agent considers necessary, `P` what it
//! considers admissible. Besides the componentwise union and intersection,
//! two compromise operators are provided:
//!
//! * `⊙` (minimalization of necessities): `[∩ Nᵢ, ∪ Pᵢ]`
//! * `⊕` (relative maximalization): `[(∪ Nᵢ) ∩ (∩ Pᵢ), ∩ Pᵢ]`
//!
//! Every n-ary operation rejects an empty family, and the binary forms are
//! the two-element case of the n-ary ones.

use alloc::string::{String, ToString};
use core::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::universe::{FiniteSet, ObjectId, Universe};

/// Which components an inclusion test compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InclusionMode {
    /// `A ⊆ B`: both components.
    Full,
    /// `A ⊆¹ B`: necessity only.
    NecessityOnly,
    /// `A ⊆² B`: admissibility only.
    AdmissibilityOnly,
}

/// Distinguished constant negotiation sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpecialKind {
    /// `∅_N = [∅, ∅]`
    EmptyN,
    /// `X_N = [X, X]`
    FullN,
    /// `X_P = [∅, X]`
    HalfEmpty,
    /// `x_{0.5} = [∅, {x}]`
    PointHalf(String),
    /// `x_1 = [{x}, {x}]`
    PointFull(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct NegotiationSet {
    necessity: FiniteSet,
    admissibility: FiniteSet,
}

impl NegotiationSet {
    pub fn new(necessity: FiniteSet, admissibility: FiniteSet) -> Result<Self> {
        if !necessity.is_subset(&admissibility)? {
            return Err(Error::NotDouble {
                necessity: necessity.to_string(),
                admissibility: admissibility.to_string(),
            });
        }
        Ok(NegotiationSet {
            necessity,
            admissibility,
        })
    }

    /// Shorthand for building both components from object names.
    pub fn from_names<N, P, S, T>(
        universe: &Universe,
        necessity: N,
        admissibility: P,
    ) -> Result<Self>
    where
        N: IntoIterator<Item = S>,
        P: IntoIterator<Item = T>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        NegotiationSet::new(
            FiniteSet::from_names(universe, necessity)?,
            FiniteSet::from_names(universe, admissibility)?,
        )
    }

    fn from_bits(universe: &Universe, necessity: Bits, admissibility: Bits) -> Self {
        debug_assert!(necessity.is_subset(&admissibility));
        NegotiationSet {
            necessity: FiniteSet::from_bits(universe, necessity),
            admissibility: FiniteSet::from_bits(universe, admissibility),
        }
    }

    pub fn special(universe: &Universe, kind: &SpecialKind) -> Result<Self> {
        let empty = || Bits::empty(universe.len());
        let full = || Bits::full(universe.len());
        let point = |name: &str| -> Result<Bits> {
            let mut bits = empty();
            bits.insert(universe.lookup(name)?.0);
            Ok(bits)
        };
        Ok(match kind {
            SpecialKind::EmptyN => NegotiationSet::from_bits(universe, empty(), empty()),
            SpecialKind::FullN => NegotiationSet::from_bits(universe, full(), full()),
            SpecialKind::HalfEmpty => NegotiationSet::from_bits(universe, empty(), full()),
            SpecialKind::PointHalf(x) => NegotiationSet::from_bits(universe, empty(), point(x)?),
            SpecialKind::PointFull(x) => {
                let p = point(x)?;
                NegotiationSet::from_bits(universe, p.clone(), p)
            }
        })
    }

    pub fn universe(&self) -> &Universe {
        self.necessity.universe()
    }

    pub fn necessity(&self) -> &FiniteSet {
        &self.necessity
    }

    pub fn admissibility(&self) -> &FiniteSet {
        &self.admissibility
    }

    /// Returns the same set with `dropped` removed from admissibility only.
    ///
    /// Fails with [`Error::NotDouble`] if a dropped object is necessary.
    pub fn drop_admissible(&self, dropped: &FiniteSet) -> Result<Self> {
        let admissibility = self.admissibility.difference(dropped)?;
        NegotiationSet::new(self.necessity.clone(), admissibility)
    }

    /// `-A = [X ∖ A², X ∖ A¹]`
    pub fn complement(&self) -> Self {
        let universe = self.universe();
        NegotiationSet::from_bits(
            universe,
            self.admissibility.bits().complement(),
            self.necessity.bits().complement(),
        )
    }

    /// `A ∖ B = [A¹ ∖ B², A² ∖ B¹]`
    pub fn difference(&self, other: &NegotiationSet) -> Result<Self> {
        self.universe().ensure_same(other.universe())?;
        Ok(NegotiationSet::from_bits(
            self.universe(),
            self.necessity.bits().difference(other.admissibility.bits()),
            self.admissibility.bits().difference(other.necessity.bits()),
        ))
    }

    pub fn included(&self, other: &NegotiationSet, mode: InclusionMode) -> Result<bool> {
        self.universe().ensure_same(other.universe())?;
        let nec = || self.necessity.bits().is_subset(other.necessity.bits());
        let adm = || {
            self.admissibility
                .bits()
                .is_subset(other.admissibility.bits())
        };
        Ok(match mode {
            InclusionMode::Full => nec() && adm(),
            InclusionMode::NecessityOnly => nec(),
            InclusionMode::AdmissibilityOnly => adm(),
        })
    }

    /// Componentwise union `[∪ Aⱼ¹, ∪ Aⱼ²]`.
    pub fn union_all<'a, I>(family: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a NegotiationSet>,
    {
        let f = Fold::over(family)?;
        Ok(NegotiationSet::from_bits(
            &f.universe,
            f.nec_union,
            f.adm_union,
        ))
    }

    /// Componentwise intersection `[∩ Aⱼ¹, ∩ Aⱼ²]`.
    pub fn inter_all<'a, I>(family: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a NegotiationSet>,
    {
        let f = Fold::over(family)?;
        Ok(NegotiationSet::from_bits(
            &f.universe,
            f.nec_inter,
            f.adm_inter,
        ))
    }

    /// Generalized minimalization `[∩ Aⱼ¹, ∪ Aⱼ²]`.
    pub fn odot_all<'a, I>(family: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a NegotiationSet>,
    {
        let f = Fold::over(family)?;
        Ok(NegotiationSet::from_bits(
            &f.universe,
            f.nec_inter,
            f.adm_union,
        ))
    }

    /// Generalized relative maximalization `[(∪ Aⱼ¹) ∩ (∩ Aⱼ²), ∩ Aⱼ²]`.
    pub fn oplus_all<'a, I>(family: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a NegotiationSet>,
    {
        let f = Fold::over(family)?;
        let nec = f.nec_union.intersection(&f.adm_inter);
        Ok(NegotiationSet::from_bits(&f.universe, nec, f.adm_inter))
    }

    pub fn union(&self, other: &NegotiationSet) -> Result<Self> {
        NegotiationSet::union_all([self, other])
    }

    pub fn inter(&self, other: &NegotiationSet) -> Result<Self> {
        NegotiationSet::inter_all([self, other])
    }

    pub fn odot(&self, other: &NegotiationSet) -> Result<Self> {
        NegotiationSet::odot_all([self, other])
    }

    pub fn oplus(&self, other: &NegotiationSet) -> Result<Self> {
        NegotiationSet::oplus_all([self, other])
    }

    /// Membership grade of one object: 0 outside, 1 admissible only, 2 necessary.
    pub fn grade(&self, id: ObjectId) -> u8 {
        if self.necessity.contains(id) {
            2
        } else if self.admissibility.contains(id) {
            1
        } else {
            0
        }
    }
}

// Running unions and intersections of both components over a family.
struct Fold {
    universe: Universe,
    nec_union: Bits,
    nec_inter: Bits,
    adm_union: Bits,
    adm_inter: Bits,
}

impl Fold {
    fn over<'a, I>(family: I) -> Result<Fold>
    where
        I: IntoIterator<Item = &'a NegotiationSet>,
    {
        let mut iter = family.into_iter();
        let first = iter.next().ok_or(Error::EmptyFamily)?;
        let mut fold = Fold {
            universe: first.universe().clone(),
            nec_union: first.necessity.bits().clone(),
            nec_inter: first.necessity.bits().clone(),
            adm_union: first.admissibility.bits().clone(),
            adm_inter: first.admissibility.bits().clone(),
        };
        for set in iter {
            fold.universe.ensure_same(set.universe())?;
            let (n, p) = (set.necessity.bits(), set.admissibility.bits());
            fold.nec_union = fold.nec_union.union(n);
            fold.nec_inter = fold.nec_inter.intersection(n);
            fold.adm_union = fold.adm_union.union(p);
            fold.adm_inter = fold.adm_inter.intersection(p);
        }
        Ok(fold)
    }
}

/// Canonical form `[{a},{a,b}]`, members in universe order.
impl fmt::Display for NegotiationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.necessity, self.admissibility)
    }
}

impl fmt::Debug for NegotiationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;
    use alloc::vec::Vec;

    fn u(names: &str) -> Universe {
        Universe::new(names.split_whitespace()).unwrap()
    }

    fn ns(u: &Universe, n: &str, p: &str) -> NegotiationSet {
        NegotiationSet::from_names(u, n.split_whitespace(), p.split_whitespace()).unwrap()
    }

    fn trip() -> (Universe, NegotiationSet, NegotiationSet, NegotiationSet) {
        let x = u("a b c d e f g h i k l");
        let a = ns(&x, "a d", "a d f g h");
        let b = ns(&x, "a b d", "a b d f i l");
        let c = ns(&x, "a h", "a d h k");
        (x, a, b, c)
    }

    fn demorgan() -> (Universe, NegotiationSet, NegotiationSet) {
        let x = u("a b c d e f g");
        let a = ns(&x, "a b", "a b c d");
        let b = ns(&x, "c d", "c d g");
        (x, a, b)
    }

    #[test]
    fn make_negset_examples() {
        let (_, a, _, _) = trip();
        assert_eq!(format!("{a}"), "[{a,d},{a,d,f,g,h}]");
        let x = u("a b");
        assert!(NegotiationSet::from_names::<[&str; 0], [&str; 0], &str, &str>(&x, [], []).is_ok());
        assert!(matches!(
            NegotiationSet::from_names(&x, ["a"], Vec::<&str>::new()),
            Err(Error::NotDouble { .. })
        ));
        let y = u("a b c");
        assert_eq!(
            NegotiationSet::new(FiniteSet::empty(&x), FiniteSet::full(&y)),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn complement_examples() {
        let (x, a, _) = demorgan();
        assert_eq!(a.complement(), ns(&x, "e f g", "c d e f g"));
        let empty = NegotiationSet::special(&x, &SpecialKind::EmptyN).unwrap();
        let full = NegotiationSet::special(&x, &SpecialKind::FullN).unwrap();
        assert_eq!(empty.complement(), full);
        let y = u("a b c");
        let s = ns(&y, "a", "a b");
        assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn difference_examples() {
        let (x, a, b) = demorgan();
        assert_eq!(a.difference(&b).unwrap(), ns(&x, "a b", "a b"));
        let empty = NegotiationSet::special(&x, &SpecialKind::EmptyN).unwrap();
        let full = NegotiationSet::special(&x, &SpecialKind::FullN).unwrap();
        assert_eq!(a.difference(&empty).unwrap(), a);
        assert_eq!(a.difference(&full).unwrap(), empty);
    }

    #[test]
    fn weak_inclusions_in_demorgan_example() {
        let (x, a, b) = demorgan();
        let lhs = a.complement().oplus(&b.complement()).unwrap();
        let rhs = a.odot(&b).unwrap().complement();
        assert_eq!(lhs, ns(&x, "e f g", "e f g"));
        assert_eq!(rhs, ns(&x, "e f", "a b c d e f g"));
        assert!(a.included(&a, InclusionMode::Full).unwrap());
        assert!(!lhs.included(&rhs, InclusionMode::NecessityOnly).unwrap());
        assert!(!rhs
            .included(&lhs, InclusionMode::AdmissibilityOnly)
            .unwrap());
        // the inclusions that do hold
        assert!(rhs.included(&lhs, InclusionMode::NecessityOnly).unwrap());
        assert!(lhs
            .included(&rhs, InclusionMode::AdmissibilityOnly)
            .unwrap());
    }

    #[test]
    fn union_and_intersection_examples() {
        let x = u("a b c");
        let f = [ns(&x, "a", "a b"), ns(&x, "c", "c")];
        assert_eq!(
            NegotiationSet::union_all(&f).unwrap(),
            ns(&x, "a c", "a b c")
        );
        let g = [ns(&x, "a", "a b"), ns(&x, "a c", "a b c")];
        assert_eq!(NegotiationSet::inter_all(&g).unwrap(), ns(&x, "a", "a b"));

        let a = ns(&x, "a", "a b");
        let empty = NegotiationSet::special(&x, &SpecialKind::EmptyN).unwrap();
        let full = NegotiationSet::special(&x, &SpecialKind::FullN).unwrap();
        assert_eq!(NegotiationSet::union_all([&a]).unwrap(), a);
        assert_eq!(NegotiationSet::inter_all([&a]).unwrap(), a);
        assert_eq!(a.union(&empty).unwrap(), a);
        assert_eq!(a.inter(&full).unwrap(), a);
    }

    #[test]
    fn empty_family_is_rejected() {
        let none: [NegotiationSet; 0] = [];
        assert_eq!(NegotiationSet::odot_all(&none), Err(Error::EmptyFamily));
        assert_eq!(NegotiationSet::oplus_all(&none), Err(Error::EmptyFamily));
        assert_eq!(NegotiationSet::union_all(&none), Err(Error::EmptyFamily));
        assert_eq!(NegotiationSet::inter_all(&none), Err(Error::EmptyFamily));
    }

    #[test]
    fn mixed_universes_are_rejected() {
        let x = u("a b");
        let y = u("a c");
        let a = ns(&x, "a", "a");
        let b = ns(&y, "a", "a");
        assert_eq!(a.odot(&b), Err(Error::UniverseMismatch));
        assert_eq!(a.oplus(&b), Err(Error::UniverseMismatch));
        assert_eq!(a.difference(&b), Err(Error::UniverseMismatch));
        assert_eq!(
            a.included(&b, InclusionMode::Full),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn trip_chains() {
        let (x, a, b, c) = trip();
        let ab = a.odot(&b).unwrap();
        assert_eq!(ab, ns(&x, "a d", "a b d f g h i l"));
        assert_eq!(
            format!("{}", ab.odot(&c).unwrap()),
            "[{a},{a,b,d,f,g,h,i,k,l}]"
        );
        let ab = a.oplus(&b).unwrap();
        assert_eq!(ab, ns(&x, "a d", "a d f"));
        assert_eq!(ab.oplus(&c).unwrap(), ns(&x, "a d", "a d"));
        let bc = b.oplus(&c).unwrap();
        assert_eq!(bc.odot(&a).unwrap(), ns(&x, "a d", "a d f g h"));
    }

    #[test]
    fn half_empty_and_points() {
        let x = u("a b");
        let a = ns(&x, "a", "a b");
        let xp = NegotiationSet::special(&x, &SpecialKind::HalfEmpty).unwrap();
        assert_eq!(xp, ns(&x, "", "a b"));
        assert_eq!(a.odot(&a).unwrap(), a);
        assert_eq!(a.odot(&xp).unwrap(), xp);
        assert_eq!(a.oplus(&xp).unwrap(), a);

        let xa = NegotiationSet::special(&x, &SpecialKind::PointFull("a".into())).unwrap();
        let xb = NegotiationSet::special(&x, &SpecialKind::PointFull("b".into())).unwrap();
        assert_eq!(xa, ns(&x, "a", "a"));
        assert_eq!(xa.oplus(&xb).unwrap(), ns(&x, "", ""));
        assert_eq!(
            NegotiationSet::special(&x, &SpecialKind::PointHalf("q".into())),
            Err(Error::UnknownObject("q".into()))
        );
        assert_eq!(
            NegotiationSet::special(&x, &SpecialKind::EmptyN).unwrap(),
            ns(&x, "", "")
        );
    }

    #[test]
    fn drop_admissible_keeps_necessity() {
        let x = u("a b c");
        let r = ns(&x, "c", "a b c");
        let dropped = FiniteSet::from_names(&x, ["b"]).unwrap();
        assert_eq!(r.drop_admissible(&dropped).unwrap(), ns(&x, "c", "a c"));
        let bad = FiniteSet::from_names(&x, ["c"]).unwrap();
        assert!(matches!(
            r.drop_admissible(&bad),
            Err(Error::NotDouble { .. })
        ));
    }

    #[test]
    fn grades() {
        let x = u("a b c");
        let s = ns(&x, "a", "a b");
        let g: Vec<u8> = x.objects().map(|o| s.grade(o)).collect();
        assert_eq!(g, vec![2, 1, 0]);
    }
}

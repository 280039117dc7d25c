//! Dense bitsets over element ids: the representation of subgroups,
//! solvabilizers and classes.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::perm_core::table::{ElemId, Group};

/// A subset of a group's elements, stored as a dense bitset over ids.
///
/// Sets remember their owning group; combining sets from different groups
/// is a programming error and panics.
#[derive(Clone)]
pub struct ElementSet {
    owner: Group,
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(owner: &Group) -> Self {
        let words = vec![0u64; owner.order().div_ceil(64)];
        ElementSet { owner: Arc::clone(owner), words, len: 0 }
    }

    pub fn full(owner: &Group) -> Self {
        let order = owner.order();
        let mut set = ElementSet::empty(owner);
        for w in &mut set.words {
            *w = u64::MAX;
        }
        let tail = order % 64;
        if tail != 0 {
            *set.words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        set.len = order;
        set
    }

    pub fn from_ids<I: IntoIterator<Item = ElemId>>(owner: &Group, ids: I) -> Self {
        let mut set = ElementSet::empty(owner);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn owner(&self) -> &Group {
        &self.owner
    }

    #[inline]
    pub fn contains(&self, id: ElemId) -> bool {
        let i = id.index();
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true if the bit was newly set.
    #[inline]
    pub fn insert(&mut self, id: ElemId) -> bool {
        debug_assert!(id.index() < self.owner.order());
        let i = id.index();
        let mask = 1u64 << (i % 64);
        let word = &mut self.words[i / 64];
        if *word & mask == 0 {
            *word |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some(ElemId((wi * 64) as u32 + tz))
                }
            })
        })
    }

    pub fn min_id(&self) -> Option<ElemId> {
        self.iter().next()
    }

    fn check_owner(&self, other: &ElementSet) {
        assert!(
            Arc::ptr_eq(&self.owner, &other.owner),
            "element sets belong to different groups"
        );
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.check_owner(other);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        self.recount();
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.check_owner(other);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        self.recount();
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.check_owner(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.check_owner(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// The conjugate set `X^g = {g^-1 x g : x in X}`, computed by applying
    /// the cached id-permutation table of `g` to the bitset.
    pub fn conjugate(&self, g: ElemId) -> ElementSet {
        if g == self.owner.identity() {
            return self.clone();
        }
        let table = self.owner.conj_table(g);
        let mut out = ElementSet::empty(&self.owner);
        for id in self.iter() {
            out.insert(ElemId(table[id.index()]));
        }
        out
    }

    /// Whether `X^g = X`, checked member-by-member with early exit and
    /// without materializing the conjugate (sizes agree, so containment
    /// of the image suffices).
    pub fn fixed_under_conjugation(&self, g: ElemId) -> bool {
        self.conjugate_equals(g, self)
    }

    /// Whether `X^g = other`; requires equal sizes to mean equality, which
    /// holds because conjugation is a bijection.
    pub fn conjugate_equals(&self, g: ElemId, other: &ElementSet) -> bool {
        self.check_owner(other);
        if self.len != other.len {
            return false;
        }
        if g == self.owner.identity() {
            return self == other;
        }
        let gi = self.owner.inv(g);
        self.iter()
            .all(|x| other.contains(self.owner.mul(self.owner.mul(gi, x), g)))
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(Arc::ptr_eq(&self.owner, &other.owner));
        self.words == other.words
    }
}

impl Eq for ElementSet {}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet({} of {})", self.len, self.owner.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_core::perm::parse_permutation;
    use crate::perm_core::table::GroupTable;

    fn a5() -> Group {
        GroupTable::closure(
            vec![
                parse_permutation(5, "(0 1 2 3 4)").unwrap(),
                parse_permutation(5, "(0 1 2)").unwrap(),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn full_and_empty() {
        let g = a5();
        let full = ElementSet::full(&g);
        assert_eq!(full.len(), 60);
        assert_eq!(full.iter().count(), 60);
        let empty = ElementSet::empty(&g);
        assert!(empty.is_empty());
        assert_eq!(empty.min_id(), None);
        assert_eq!(full.min_id(), Some(ElemId(0)));
    }

    #[test]
    fn set_algebra() {
        let g = a5();
        let a = ElementSet::from_ids(&g, [ElemId(0), ElemId(3), ElemId(17)]);
        let b = ElementSet::from_ids(&g, [ElemId(3), ElemId(59)]);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.intersection(&b).len(), 1);
        assert_eq!(a.intersection_len(&b), 1);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
    }

    #[test]
    fn conjugation_preserves_size_and_inverts() {
        let g = a5();
        let x = ElementSet::from_ids(&g, (0..7).map(ElemId));
        let gid = ElemId(42);
        let conj = x.conjugate(gid);
        assert_eq!(conj.len(), x.len());
        assert_eq!(conj.conjugate(g.inv(gid)), x);
        assert_eq!(x.conjugate(g.identity()), x);
    }

    #[test]
    fn fixed_under_conjugation_matches_explicit_conjugate() {
        let g = a5();
        let x = ElementSet::from_ids(&g, (0..9).map(ElemId));
        for gid in 0..g.order() as u32 {
            let gid = ElemId(gid);
            assert_eq!(x.fixed_under_conjugation(gid), x.conjugate(gid) == x);
        }
    }
}

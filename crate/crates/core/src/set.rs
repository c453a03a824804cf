//! Fixed-width bit sets over the elements `0..domain` of a poset.

use std::fmt;

/// A set of poset elements, stored as a bit vector.
///
/// Every set carries the size of the ambient ground set (`domain`); operations
/// on sets with different domains are programming errors and panic. The
/// derived `Ord` (domain, then blocks low-to-high) gives a deterministic
/// order used for canonical output everywhere in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    domain: usize,
    blocks: Vec<u64>,
}

fn blocks_for(domain: usize) -> usize {
    domain.div_ceil(64)
}

impl ElemSet {
    pub fn empty(domain: usize) -> Self {
        ElemSet {
            domain,
            blocks: vec![0; blocks_for(domain)],
        }
    }

    pub fn full(domain: usize) -> Self {
        let mut s = Self::empty(domain);
        for b in s.blocks.iter_mut() {
            *b = !0;
        }
        s.mask_tail();
        s
    }

    pub fn singleton(domain: usize, i: usize) -> Self {
        let mut s = Self::empty(domain);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(domain: usize, iter: I) -> Self {
        let mut s = Self::empty(domain);
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub(crate) fn from_blocks(domain: usize, blocks: Vec<u64>) -> Self {
        debug_assert_eq!(blocks.len(), blocks_for(domain));
        let mut s = ElemSet { domain, blocks };
        s.mask_tail();
        s
    }

    fn mask_tail(&mut self) {
        let extra = self.blocks.len() * 64 - self.domain;
        if extra > 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= !0 >> extra;
            }
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn insert(&mut self, i: usize) {
        assert!(
            i < self.domain,
            "element {i} out of range 0..{}",
            self.domain
        );
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.domain);
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.domain && self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Ascending iterator over the members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let i = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(w * 64 + i)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.domain, other.domain, "mixed set domains");
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for b in s.blocks.iter_mut() {
            *b = !*b;
        }
        s.mask_tail();
        s
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check(other);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check(other);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    pub(crate) fn blocks(&self) -> &[u64] {
        &self.blocks
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

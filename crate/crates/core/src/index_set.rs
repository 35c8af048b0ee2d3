use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest rank an [`IndexSet`] can address.
pub const MAX_RANK: usize = 64;

/// A subset of `{1, ..., r}`.
///
/// Stored as a bitmask over zero-based positions. Construction from labels,
/// iteration through [`IndexSet::labels`], `Display` and JSON all use the
/// 1-based labels.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const fn empty() -> Self {
        IndexSet(0)
    }

    /// `{1, ..., r}`.
    pub fn full(r: usize) -> Self {
        assert!(r <= MAX_RANK);
        if r == MAX_RANK {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << r) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds the set from 1-based labels, each of which must be at most `r`.
    pub fn from_labels(labels: &[usize], r: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &l in labels {
            if l == 0 || l > r || l > MAX_RANK {
                return Err(Error::BadIndex { index: l, bound: r });
            }
            bits |= 1 << (l - 1);
        }
        Ok(IndexSet(bits))
    }

    /// Builds the set from zero-based positions.
    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        let mut bits = 0u64;
        for p in positions {
            assert!(p < MAX_RANK, "position {p} out of range");
            bits |= 1 << p;
        }
        IndexSet(bits)
    }

    /// Membership of a zero-based position.
    pub fn contains(self, position: usize) -> bool {
        position < MAX_RANK && self.0 & (1 << position) != 0
    }

    pub fn contains_label(self, label: usize) -> bool {
        label >= 1 && self.contains(label - 1)
    }

    pub fn insert(&mut self, position: usize) {
        assert!(position < MAX_RANK);
        self.0 |= 1 << position;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, r: usize) -> Self {
        IndexSet(!self.0 & IndexSet::full(r).0)
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Zero-based positions in increasing order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_RANK).filter(move |&p| bits & (1 << p) != 0)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.positions().map(|p| p + 1).collect()
    }

    /// Largest position plus one; `0` for the empty set.
    pub fn bound(self) -> usize {
        MAX_RANK - self.0.leading_zeros() as usize
    }

    /// All subsets of `{1, ..., r}` in increasing bitmask order.
    pub fn all_subsets(r: usize) -> impl Iterator<Item = IndexSet> {
        assert!(r < MAX_RANK);
        (0..(1u64 << r)).map(IndexSet)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        IndexSet::from_labels(&labels, MAX_RANK).map_err(serde::de::Error::custom)
    }
}

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

/// A set of row positions (0-based) within a table's universe.
///
/// Reports list rows 1-based, ascending, so serialization shifts every
/// index by one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowSet(BTreeSet<usize>);

impl RowSet {
    pub fn new() -> Self {
        RowSet(BTreeSet::new())
    }

    /// All rows `0..n`.
    pub fn universe(n: usize) -> Self {
        (0..n).collect()
    }

    /// Builds a set from 1-based row numbers, as printed in reports.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(rows: I) -> Self {
        rows.into_iter().map(|r| r - 1).collect()
    }

    pub fn insert(&mut self, row: usize) -> bool {
        self.0.insert(row)
    }

    pub fn contains(&self, row: usize) -> bool {
        self.0.contains(&row)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &RowSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &RowSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &RowSet) -> RowSet {
        RowSet(&self.0 | &other.0)
    }

    pub fn intersection(&self, other: &RowSet) -> RowSet {
        RowSet(&self.0 & &other.0)
    }

    pub fn difference(&self, other: &RowSet) -> RowSet {
        RowSet(&self.0 - &other.0)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|r| r + 1).collect()
    }
}

impl FromIterator<usize> for RowSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        RowSet(iter.into_iter().collect())
    }
}

impl IntoIterator for RowSet {
    type Item = usize;
    type IntoIter = std::collections::btree_set::IntoIter<usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl Extend<usize> for RowSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl Serialize for RowSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|r| r + 1))
    }
}

/// Serializes a `(usize, usize)` list of 0-based row pairs as 1-based pairs.
pub(crate) fn serialize_pairs<S: Serializer>(
    pairs: &[(usize, usize)],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(pairs.iter().map(|&(i, j)| [i + 1, j + 1]))
}

/// Serializes 0-based indices as 1-based numbers.
pub(crate) fn serialize_one_based<S: Serializer>(idx: &[usize], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(idx.iter().map(|i| i + 1))
}

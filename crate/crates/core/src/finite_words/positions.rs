use std::fmt;

use super::FiniteWord;
use crate::error::{Error, Result};

/// A set of positions of one word, kept sorted. The induced subsequence
/// carries the order inherited from the word; convexity is a query, not an
/// invariant, since differences of convex sets need not be convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionSet<'w> {
    word: &'w FiniteWord,
    positions: Vec<usize>,
}

impl<'w> PositionSet<'w> {
    pub fn new<I: IntoIterator<Item = usize>>(word: &'w FiniteWord, positions: I) -> Result<Self> {
        let mut positions: Vec<usize> = positions.into_iter().collect();
        positions.sort_unstable();
        positions.dedup();
        if let Some(&index) = positions.iter().find(|&&i| i >= word.len()) {
            return Err(Error::PositionOutOfRange {
                index,
                len: word.len(),
            });
        }
        Ok(PositionSet { word, positions })
    }

    /// The convex set `start..end`.
    pub fn interval(word: &'w FiniteWord, start: usize, end: usize) -> Result<Self> {
        PositionSet::new(word, start..end)
    }

    pub fn word(&self) -> &'w FiniteWord {
        self.word
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    pub fn is_convex(&self) -> bool {
        self.positions.windows(2).all(|p| p[1] == p[0] + 1)
    }

    /// `(start, end)` with `end` exclusive, when the set is a nonempty interval.
    pub fn as_interval(&self) -> Option<(usize, usize)> {
        match (self.positions.first(), self.positions.last()) {
            (Some(&s), Some(&e)) if self.is_convex() => Some((s, e + 1)),
            _ => None,
        }
    }

    /// The letters at these positions, in word order.
    pub fn subsequence(&self) -> FiniteWord {
        self.positions
            .iter()
            .map(|&i| self.word.letters()[i])
            .collect()
    }

    /// Positions of the word not in this set.
    pub fn complement(&self) -> PositionSet<'w> {
        PositionSet {
            word: self.word,
            positions: (0..self.word.len())
                .filter(|&i| !self.contains(i))
                .collect(),
        }
    }

    fn check_same_word(&self, other: &PositionSet<'_>) -> Result<()> {
        if std::ptr::eq(self.word, other.word) || self.word == other.word {
            Ok(())
        } else {
            Err(Error::MismatchedWords)
        }
    }

    pub fn intersection(&self, other: &PositionSet<'_>) -> Result<PositionSet<'w>> {
        self.check_same_word(other)?;
        Ok(self.filtered(|i| other.contains(i)))
    }

    pub fn difference(&self, other: &PositionSet<'_>) -> Result<PositionSet<'w>> {
        self.check_same_word(other)?;
        Ok(self.filtered(|i| !other.contains(i)))
    }

    pub fn union(&self, other: &PositionSet<'_>) -> Result<PositionSet<'w>> {
        self.check_same_word(other)?;
        PositionSet::new(
            self.word,
            self.positions.iter().chain(&other.positions).copied(),
        )
    }

    fn filtered(&self, keep: impl Fn(usize) -> bool) -> PositionSet<'w> {
        PositionSet {
            word: self.word,
            positions: self
                .positions
                .iter()
                .copied()
                .filter(|&i| keep(i))
                .collect(),
        }
    }
}

impl fmt::Display for PositionSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.positions.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOps<'w> {
    pub intersection: PositionSet<'w>,
    pub h_minus_k: PositionSet<'w>,
    pub k_minus_h: PositionSet<'w>,
}

/// Intersection and both differences of two position sets of the same word.
pub fn subset_ops<'w>(h: &PositionSet<'w>, k: &PositionSet<'w>) -> Result<SubsetOps<'w>> {
    Ok(SubsetOps {
        intersection: h.intersection(k)?,
        h_minus_k: h.difference(k)?,
        k_minus_h: k.difference(h)?,
    })
}

//! Explicit finite words over `{a, b}` and the reduction calculus on them.
//!
//! A word is pseudonull when it can be erased entirely by removing convex
//! pseudonull blocks; for finite words this is the Dyck condition. Two
//! checkers are provided ([`pseudonull_counting`] and
//! [`pseudonull_recursive`]) so that each can serve as an oracle for the
//! other, and [`reduce_families`] enumerates reducing families exhaustively
//! for the small-instance lemma checks.

mod positions;
mod pseudonull;
mod reduction;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bicyclic::SElem;
use crate::error::{Error, Result};

pub use positions::{subset_ops, PositionSet, SubsetOps};
pub use pseudonull::{
    counting_failure, degree, degree_bounded, pseudonull_counting, pseudonull_recursive,
    satisfies_p1, satisfies_p2, satisfies_p3, CountingFailure, Degree, PseudonullTable,
    DEGREE_MAX_LEN,
};
pub use reduction::{
    block_decomposition, maximal_family, reduce_deletion, reduce_families, reduce_families_bounded,
    regular_normal, regular_normal_exhaustive, split_reductions, ReductionTrace, Segment,
    SegmentKind, FAMILIES_MAX_LEN,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn as_elem(self) -> SElem {
        match self {
            Letter::A => SElem::A,
            Letter::B => SElem::B,
        }
    }
}

/// A finite word over `{a, b}`, positions indexed `0..len`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord(Vec<Letter>);

impl FiniteWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord(letters)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    /// `b^n a^m` spelled out.
    pub fn normal(n: usize, m: usize) -> Self {
        let mut v = vec![Letter::B; n];
        v.resize(n + m, Letter::A);
        FiniteWord(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// The convex subword on `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> FiniteWord {
        FiniteWord(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FiniteWord(v)
    }

    pub fn repeat(&self, k: usize) -> FiniteWord {
        FiniteWord(self.0.repeat(k))
    }

    /// Order reversal composed with the letter swap `a <-> b`. Pseudonull
    /// words map to pseudonull words, and `b^n a^m` maps to `b^m a^n`.
    pub fn mirror(&self) -> FiniteWord {
        FiniteWord(self.0.iter().rev().map(|l| l.swap()).collect())
    }

    /// `Some((n, m))` when the word is literally `b^n a^m`.
    pub fn normal_shape(&self) -> Option<(usize, usize)> {
        let n = self.0.iter().take_while(|&&l| l == Letter::B).count();
        if self.0[n..].iter().all(|&l| l == Letter::A) {
            Some((n, self.0.len() - n))
        } else {
            None
        }
    }

    /// True when some `a` is immediately followed by `b`.
    pub fn contains_ab(&self) -> bool {
        self.0.windows(2).any(|w| w == [Letter::A, Letter::B])
    }

    /// All `2^len` words of the given length, in lexicographic order with
    /// `a < b`.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = FiniteWord> {
        assert!(len < usize::BITS as usize);
        (0usize..1 << len).map(move |bits| {
            FiniteWord(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 1 {
                            Letter::B
                        } else {
                            Letter::A
                        }
                    })
                    .collect(),
            )
        })
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = FiniteWord> {
        (0..=max_len).flat_map(FiniteWord::all_of_len)
    }
}

impl FromIterator<Letter> for FiniteWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        FiniteWord(iter.into_iter().collect())
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.char_indices()
            .map(|(pos, c)| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                found => Err(Error::InvalidLetter { pos, found }),
            })
            .collect()
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn w(s: &str) -> FiniteWord {
    s.parse().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(w("abba").to_string(), "abba");
        assert_eq!(w("").len(), 0);
        assert_eq!(
            "abxa".parse::<FiniteWord>(),
            Err(Error::InvalidLetter { pos: 2, found: 'x' })
        );
    }

    #[test]
    fn shapes() {
        assert_eq!(w("bbaaa").normal_shape(), Some((2, 3)));
        assert_eq!(w("").normal_shape(), Some((0, 0)));
        assert_eq!(w("bab").normal_shape(), None);
        assert_eq!(FiniteWord::normal(2, 1), w("bba"));
        assert_eq!(w("bba").mirror(), w("baa"));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(FiniteWord::all_of_len(0).count(), 1);
        assert_eq!(FiniteWord::all_of_len(4).count(), 16);
        assert_eq!(FiniteWord::all_up_to(3).count(), 15);
        assert_eq!(FiniteWord::all_of_len(2).collect::<Vec<_>>()[1], w("ab"));
    }
}

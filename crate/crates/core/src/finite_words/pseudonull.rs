use std::fmt;

use serde::Serialize;

use super::{FiniteWord, Letter};
use crate::error::{Error, Result};

/// Longest word accepted by [`degree`].
pub const DEGREE_MAX_LEN: usize = 16;

/// Running balance `#a - #b` after each prefix, starting with the empty one.
fn balances(w: &FiniteWord) -> impl Iterator<Item = i64> + '_ {
    std::iter::once(0).chain(w.letters().iter().scan(0i64, |bal, l| {
        *bal += match l {
            Letter::A => 1,
            Letter::B => -1,
        };
        Some(*bal)
    }))
}

/// (p1): equally many a's and b's.
pub fn satisfies_p1(w: &FiniteWord) -> bool {
    w.count(Letter::A) == w.count(Letter::B)
}

/// (p2): every initial substring has at least as many a's as b's.
pub fn satisfies_p2(w: &FiniteWord) -> bool {
    balances(w).all(|b| b >= 0)
}

/// (p3): every final substring has at least as many b's as a's.
pub fn satisfies_p3(w: &FiniteWord) -> bool {
    satisfies_p2(&w.mirror())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "lowercase")]
pub enum CountingFailure {
    /// The prefix of this length has more b's than a's.
    P2 { prefix_len: usize },
    /// Letter counts differ.
    P1 { a: usize, b: usize },
}

impl CountingFailure {
    pub fn describe(&self, w: &FiniteWord) -> String {
        match *self {
            CountingFailure::P2 { prefix_len } => {
                format!("(p2) fails at prefix {}", w.slice(0, prefix_len))
            }
            CountingFailure::P1 { a, b } => {
                format!("(p1) fails: {a} occurrences of a, {b} of b")
            }
        }
    }
}

impl fmt::Display for CountingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CountingFailure::P2 { prefix_len } => {
                write!(f, "(p2) fails at prefix length {prefix_len}")
            }
            CountingFailure::P1 { a, b } => write!(f, "(p1) fails: #a = {a}, #b = {b}"),
        }
    }
}

/// The first counting condition that fails, scanning prefixes left to right.
pub fn counting_failure(w: &FiniteWord) -> Option<CountingFailure> {
    if let Some(prefix_len) = balances(w).position(|b| b < 0) {
        return Some(CountingFailure::P2 { prefix_len });
    }
    if satisfies_p1(w) {
        None
    } else {
        Some(CountingFailure::P1 {
            a: w.count(Letter::A),
            b: w.count(Letter::B),
        })
    }
}

/// Pseudonull by counting: (p1) and (p2).
pub fn pseudonull_counting(w: &FiniteWord) -> bool {
    counting_failure(w).is_none()
}

/// Pseudonull by the inductive clauses: empty; `a v b` with `v` pseudonull;
/// a concatenation of two nonempty pseudonull words. Longer convex
/// partitions reduce to binary splits by associativity of concatenation.
pub fn pseudonull_recursive(w: &FiniteWord) -> bool {
    PseudonullTable::new(w).is_pseudonull(0, w.len())
}

/// Memo table over all intervals `i..j` of one word.
#[derive(Clone, Debug)]
pub struct PseudonullTable {
    len: usize,
    cells: Vec<bool>,
}

impl PseudonullTable {
    pub fn new(w: &FiniteWord) -> Self {
        let len = w.len();
        let letters = w.letters();
        let mut t = PseudonullTable {
            len,
            cells: vec![false; (len + 1) * (len + 1)],
        };
        for i in 0..=len {
            t.set(i, i, true);
        }
        // Odd lengths are never pseudonull.
        for span in (2..=len).step_by(2) {
            for i in 0..=len - span {
                let j = i + span;
                let wrapped =
                    letters[i] == Letter::A && letters[j - 1] == Letter::B && t.get(i + 1, j - 1);
                let split = || (i + 2..j).step_by(2).any(|k| t.get(i, k) && t.get(k, j));
                let v = wrapped || split();
                t.set(i, j, v);
            }
        }
        t
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.len + 1) + j
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.cells[self.idx(i, j)]
    }

    fn set(&mut self, i: usize, j: usize, v: bool) {
        let k = self.idx(i, j);
        self.cells[k] = v;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Whether the convex subword `i..j` is pseudonull.
    pub fn is_pseudonull(&self, i: usize, j: usize) -> bool {
        assert!(i <= j && j <= self.len, "interval {i}..{j} out of range");
        self.get(i, j)
    }

    /// All nonempty pseudonull intervals `(i, j)`, ordered by start then end.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len {
            for j in (i + 2..=self.len).step_by(2) {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Least `d` such that a word is pseudonull of degree `<= d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Degree(pub u32);

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn degree(w: &FiniteWord) -> Result<Degree> {
    degree_bounded(w, DEGREE_MAX_LEN)
}

/// Minimum over all derivations: the empty word has degree 0; wrapping
/// `a v b` costs one more than `v`; a partition into two or more convex
/// pseudonull blocks costs one more than its largest block.
pub fn degree_bounded(w: &FiniteWord, bound: usize) -> Result<Degree> {
    let len = w.len();
    if len > bound {
        return Err(Error::TooLong {
            what: "degree",
            len,
            bound,
        });
    }
    let letters = w.letters();
    let n = len + 1;
    // deg[i][j]: degree of i..j, None when not pseudonull.
    // part[i][j]: least max block degree over partitions into >= 2 blocks.
    let mut deg: Vec<Option<u32>> = vec![None; n * n];
    let mut part: Vec<Option<u32>> = vec![None; n * n];
    let at = |i: usize, j: usize| i * n + j;
    for i in 0..=len {
        deg[at(i, i)] = Some(0);
    }
    for span in (2..=len).step_by(2) {
        for i in 0..=len - span {
            let j = i + span;
            let mut best_part: Option<u32> = None;
            for k in (i + 2..j).step_by(2) {
                let Some(first) = deg[at(i, k)] else { continue };
                let rest = match (deg[at(k, j)], part[at(k, j)]) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                if let Some(rest) = rest {
                    let cand = first.max(rest);
                    best_part = Some(best_part.map_or(cand, |b| b.min(cand)));
                }
            }
            part[at(i, j)] = best_part;
            let wrapped = if letters[i] == Letter::A && letters[j - 1] == Letter::B {
                deg[at(i + 1, j - 1)].map(|d| d + 1)
            } else {
                None
            };
            let split = best_part.map(|d| d + 1);
            deg[at(i, j)] = match (wrapped, split) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
    }
    deg[at(0, len)]
        .map(Degree)
        .ok_or_else(|| Error::NotPseudonull(w.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_words::w;

    /// Brute force over every derivation, enumerating all partitions by
    /// cut masks rather than binary splits.
    fn degree_brute(word: &FiniteWord) -> Option<u32> {
        let l = word.letters();
        if l.is_empty() {
            return Some(0);
        }
        let mut best: Option<u32> = None;
        let mut consider = |d: u32| best = Some(best.map_or(d, |b| b.min(d)));
        if l[0] == Letter::A && l[l.len() - 1] == Letter::B {
            if let Some(d) = degree_brute(&word.slice(1, l.len() - 1)) {
                consider(d + 1);
            }
        }
        let cuts = l.len() - 1;
        for mask in 1u32..(1 << cuts) {
            let mut start = 0;
            let mut max = Some(0);
            for pos in 1..=l.len() {
                if pos == l.len() || mask >> (pos - 1) & 1 == 1 {
                    max = match (max, degree_brute(&word.slice(start, pos))) {
                        (Some(m), Some(d)) => Some(m.max(d)),
                        _ => None,
                    };
                    start = pos;
                }
            }
            if let Some(m) = max {
                consider(m + 1);
            }
        }
        best
    }

    #[test]
    fn counting_examples() {
        assert!(pseudonull_counting(&w("aaababbabb")));
        assert!(!pseudonull_counting(&w("baab")));
        assert!(pseudonull_counting(&w("")));
        let bad = w("baab");
        let failure = counting_failure(&bad).unwrap();
        assert_eq!(failure, CountingFailure::P2 { prefix_len: 1 });
        assert_eq!(failure.describe(&bad), "(p2) fails at prefix b");
        assert_eq!(
            counting_failure(&w("aab")),
            Some(CountingFailure::P1 { a: 2, b: 1 })
        );
    }

    #[test]
    fn recursive_examples() {
        assert!(pseudonull_recursive(&w("ab")));
        assert!(!pseudonull_recursive(&w("ba")));
        assert!(pseudonull_recursive(&w("abab")));
        assert!(pseudonull_recursive(&w("")));
        assert!(pseudonull_recursive(&w("aaababbabb")));
        assert!(!pseudonull_recursive(&w("baab")));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&w("")).unwrap(), Degree(0));
        assert_eq!(degree(&w("ab")).unwrap(), Degree(1));
        assert_eq!(degree(&w("aabb")).unwrap(), Degree(2));
        assert_eq!(degree_brute(&w("ab")), Some(1));
        assert_eq!(degree_brute(&w("aabb")), Some(2));
        assert_eq!(degree(&w("ba")), Err(Error::NotPseudonull("ba".into())));
        let long = FiniteWord::normal(0, 9).concat(&FiniteWord::normal(9, 0));
        assert!(matches!(
            degree(&long),
            Err(Error::TooLong { bound: 16, .. })
        ));
    }

    #[test]
    fn degree_matches_brute_force() {
        for word in FiniteWord::all_up_to(10) {
            let fast = degree(&word).ok().map(|d| d.0);
            assert_eq!(fast, degree_brute(&word), "{word}");
        }
    }

    #[test]
    fn p_conditions() {
        for word in FiniteWord::all_up_to(10) {
            let pn = pseudonull_counting(&word);
            assert_eq!(pn, satisfies_p1(&word) && satisfies_p3(&word), "{word}");
            assert_eq!(pn, satisfies_p2(&word) && satisfies_p3(&word), "{word}");
        }
    }

    #[test]
    fn table_intervals() {
        let word = w("abab");
        let t = PseudonullTable::new(&word);
        assert_eq!(t.intervals(), vec![(0, 2), (0, 4), (2, 4)]);
    }
}

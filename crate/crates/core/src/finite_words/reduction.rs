use super::{FiniteWord, Letter, PositionSet, PseudonullTable};
use crate::bicyclic::SElem;
use crate::error::{Error, Result};

/// Default cap on the word length accepted by [`reduce_families`].
pub const FAMILIES_MAX_LEN: usize = 12;

/// A reducing family (pairwise disjoint convex pseudonull blocks) together
/// with what survives its removal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace<'w> {
    pub blocks: Vec<PositionSet<'w>>,
    pub kept: PositionSet<'w>,
    pub survivor: FiniteWord,
    /// `Some(b^n a^m)` when the survivor has that shape.
    pub normal: Option<SElem>,
}

impl<'w> ReductionTrace<'w> {
    /// Builds the trace for blocks given as half-open intervals.
    pub fn from_intervals(word: &'w FiniteWord, intervals: &[(usize, usize)]) -> Result<Self> {
        let blocks = intervals
            .iter()
            .map(|&(s, e)| PositionSet::interval(word, s, e))
            .collect::<Result<Vec<_>>>()?;
        let mut removed = vec![false; word.len()];
        for &(s, e) in intervals {
            for r in &mut removed[s..e] {
                *r = true;
            }
        }
        let kept = PositionSet::new(word, (0..word.len()).filter(|&i| !removed[i]))?;
        let survivor = kept.subsequence();
        let normal = survivor
            .normal_shape()
            .map(|(n, m)| SElem::Normal(n as u64, m as u64));
        Ok(ReductionTrace {
            blocks,
            kept,
            survivor,
            normal,
        })
    }

    pub fn word(&self) -> &'w FiniteWord {
        self.kept.word()
    }

    pub fn is_regularizing(&self) -> bool {
        self.normal.is_some()
    }

    /// Union of all blocks.
    pub fn removed(&self) -> PositionSet<'w> {
        self.kept.complement()
    }

    /// Blocks as half-open intervals.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .map(|b| {
                b.as_interval()
                    .expect("reducing blocks are nonempty and convex")
            })
            .collect()
    }
}

/// Repeatedly deletes adjacent `ab` and reads the residue as `b^n a^m`.
///
/// The deletions are performed left to right with a stack: each incoming `b`
/// erases the nearest surviving `a` immediately before it. Any other order
/// gives the same residue.
pub fn reduce_deletion(w: &FiniteWord) -> SElem {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l == Letter::B && stack.last() == Some(&Letter::A) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    let (n, m) = FiniteWord::new(stack)
        .normal_shape()
        .expect("a residue without `ab` factors is b^n a^m");
    SElem::Normal(n as u64, m as u64)
}

/// For each position, the partner it is erased with under `ab` deletion.
fn matching(w: &FiniteWord) -> Vec<Option<usize>> {
    let mut partner = vec![None; w.len()];
    let mut open = Vec::new();
    for (i, &l) in w.letters().iter().enumerate() {
        match l {
            Letter::A => open.push(i),
            Letter::B => {
                if let Some(j) = open.pop() {
                    partner[i] = Some(j);
                    partner[j] = Some(i);
                }
            }
        }
    }
    partner
}

/// The reducing family erased by `ab` deletion: the outermost matched
/// `a ... b` spans. Its survivor is the full reduced form.
pub fn maximal_family(w: &FiniteWord) -> ReductionTrace<'_> {
    let partner = matching(w);
    let mut intervals = Vec::new();
    let mut i = 0;
    while i < w.len() {
        match partner[i] {
            Some(j) if j > i => {
                intervals.push((i, j + 1));
                i = j + 1;
            }
            _ => i += 1,
        }
    }
    ReductionTrace::from_intervals(w, &intervals).expect("intervals lie inside the word")
}

/// Every reducing family of `w` (including the empty one), with the cap
/// [`FAMILIES_MAX_LEN`].
pub fn reduce_families(w: &FiniteWord) -> Result<Vec<ReductionTrace<'_>>> {
    reduce_families_bounded(w, FAMILIES_MAX_LEN)
}

pub fn reduce_families_bounded(w: &FiniteWord, bound: usize) -> Result<Vec<ReductionTrace<'_>>> {
    if w.len() > bound {
        return Err(Error::TooLong {
            what: "reduce_families",
            len: w.len(),
            bound,
        });
    }
    let table = PseudonullTable::new(w);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    enumerate_families(&table, 0, &mut chosen, &mut |family| {
        out.push(ReductionTrace::from_intervals(w, family).expect("intervals lie inside the word"));
    });
    Ok(out)
}

fn enumerate_families(
    table: &PseudonullTable,
    from: usize,
    chosen: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    if from >= table.len() {
        emit(chosen);
        return;
    }
    enumerate_families(table, from + 1, chosen, emit);
    for end in (from + 2..=table.len()).step_by(2) {
        if table.is_pseudonull(from, end) {
            chosen.push((from, end));
            enumerate_families(table, end, chosen, emit);
            chosen.pop();
        }
    }
}

/// The regular normal form `b^n a^m` of a finite word. Finite words are
/// always regular, so this is total.
pub fn regular_normal(w: &FiniteWord) -> SElem {
    reduce_deletion(w)
}

/// The regular normal form found by exhaustive family enumeration; `None`
/// when no family leaves a survivor of shape `b^n a^m`.
pub fn regular_normal_exhaustive(w: &FiniteWord) -> Result<Option<SElem>> {
    Ok(reduce_families(w)?.into_iter().find_map(|t| t.normal))
}

/// Normal forms of the prefix `..k` and suffix `k..` of a pseudonull word;
/// these are always `a^n` and `b^n` for a common `n`.
pub fn split_reductions(w: &FiniteWord, k: usize) -> Result<(SElem, SElem)> {
    if !super::pseudonull_recursive(w) {
        return Err(Error::NotPseudonull(w.to_string()));
    }
    if k > w.len() {
        return Err(Error::InvalidSplit { k, len: w.len() });
    }
    Ok((
        regular_normal(&w.slice(0, k)),
        regular_normal(&w.slice(k, w.len())),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    /// A union of adjacent reducing blocks; pseudonull.
    Reduced,
    /// A run of surviving letters.
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment<'w> {
    pub kind: SegmentKind,
    pub positions: PositionSet<'w>,
}

/// Splits the word of a regularizing trace into alternating maximal runs of
/// removed and surviving positions: `K_0 R_0 K_1 R_1 ... K_{r+1}`, with
/// every `K` a convex pseudonull union of blocks and the `R` runs spelling
/// `b^n0, ..., b^ns a^ms, ..., a^mr` in order. `None` for a trace that is
/// not regularizing.
pub fn block_decomposition<'w>(trace: &ReductionTrace<'w>) -> Option<Vec<Segment<'w>>> {
    trace.normal?;
    let word = trace.word();
    let mut segments = Vec::new();
    let mut start = 0;
    while start < word.len() {
        let kept = trace.kept.contains(start);
        let mut end = start + 1;
        while end < word.len() && trace.kept.contains(end) == kept {
            end += 1;
        }
        segments.push(Segment {
            kind: if kept {
                SegmentKind::Residual
            } else {
                SegmentKind::Reduced
            },
            positions: PositionSet::interval(word, start, end).expect("in range"),
        });
        start = end;
    }
    Some(segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_words::{pseudonull_recursive, w};
    use std::collections::{BTreeSet, HashSet, VecDeque};

    /// Every residue reachable by deleting adjacent `ab` in any order.
    fn all_deletion_residues(word: &FiniteWord) -> BTreeSet<FiniteWord> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([word.clone()]);
        let mut terminal = BTreeSet::new();
        while let Some(cur) = queue.pop_front() {
            if !seen.insert(cur.clone()) {
                continue;
            }
            let l = cur.letters();
            let mut any = false;
            for i in 0..l.len().saturating_sub(1) {
                if l[i] == Letter::A && l[i + 1] == Letter::B {
                    any = true;
                    let mut next = l.to_vec();
                    next.drain(i..i + 2);
                    queue.push_back(FiniteWord::new(next));
                }
            }
            if !any {
                terminal.insert(cur);
            }
        }
        terminal
    }

    /// Brute-force family oracle: all subsets of pseudonull intervals that
    /// are pairwise disjoint.
    fn brute_families(word: &FiniteWord) -> BTreeSet<Vec<(usize, usize)>> {
        let mut ivs = Vec::new();
        for i in 0..word.len() {
            for j in i + 1..=word.len() {
                if pseudonull_recursive(&word.slice(i, j)) {
                    ivs.push((i, j));
                }
            }
        }
        let mut out = BTreeSet::new();
        for mask in 0u64..1 << ivs.len() {
            let pick: Vec<_> = (0..ivs.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| ivs[k])
                .collect();
            let disjoint = pick
                .iter()
                .enumerate()
                .all(|(x, a)| pick[x + 1..].iter().all(|b| a.1 <= b.0 || b.1 <= a.0));
            if disjoint {
                let mut p = pick;
                p.sort();
                out.insert(p);
            }
        }
        out
    }

    fn families_of(word: &FiniteWord) -> BTreeSet<Vec<(usize, usize)>> {
        reduce_families(word)
            .unwrap()
            .iter()
            .map(|t| t.intervals())
            .collect()
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(all_deletion_residues(&w("baab")), BTreeSet::from([w("ba")]));
        assert_eq!(reduce_deletion(&w("baab")), SElem::Normal(1, 1));
        assert_eq!(reduce_deletion(&w("")), SElem::E);
        assert_eq!(reduce_deletion(&w("aaababbabb")), SElem::E);
    }

    #[test]
    fn confluence_up_to_ten() {
        for word in FiniteWord::all_up_to(10) {
            let residues = all_deletion_residues(&word);
            assert_eq!(residues.len(), 1, "{word}");
            let (n, m) = residues.iter().next().unwrap().normal_shape().unwrap();
            assert_eq!(reduce_deletion(&word), SElem::Normal(n as u64, m as u64));
        }
    }

    #[test]
    fn families_examples() {
        let ab = w("ab");
        assert_eq!(families_of(&ab), BTreeSet::from([vec![], vec![(0, 2)]]));
        let t = reduce_families(&ab).unwrap();
        assert_eq!(t[0].survivor, w("ab"));
        assert_eq!(t[1].survivor, w(""));
        assert_eq!(t[1].normal, Some(SElem::E));

        let abab = w("abab");
        let expected = brute_families(&abab);
        assert_eq!(
            expected,
            BTreeSet::from([
                vec![],
                vec![(0, 2)],
                vec![(2, 4)],
                vec![(0, 2), (2, 4)],
                vec![(0, 4)],
            ])
        );
        assert_eq!(families_of(&abab), expected);

        assert_eq!(families_of(&w("ba")), BTreeSet::from([vec![]]));
    }

    #[test]
    fn families_match_brute_force() {
        for word in FiniteWord::all_up_to(8) {
            let fam = reduce_families(&word).unwrap();
            let set: BTreeSet<_> = fam.iter().map(|t| t.intervals()).collect();
            assert_eq!(set.len(), fam.len(), "duplicates for {word}");
            assert_eq!(set, brute_families(&word), "{word}");
        }
    }

    #[test]
    fn families_bound() {
        let long = w("abababababab");
        assert!(reduce_families(&long).is_ok());
        let longer = long.concat(&w("a"));
        assert!(matches!(
            reduce_families(&longer),
            Err(Error::TooLong {
                len: 13,
                bound: 12,
                ..
            })
        ));
    }

    #[test]
    fn regular_normal_examples() {
        assert_eq!(all_deletion_residues(&w("baba")), BTreeSet::from([w("ba")]));
        assert_eq!(regular_normal(&w("baba")), SElem::Normal(1, 1));
        assert_eq!(
            regular_normal_exhaustive(&w("baba")).unwrap(),
            Some(SElem::Normal(1, 1))
        );
        assert_eq!(regular_normal(&w("bbaaa")), SElem::Normal(2, 3));
        assert_eq!(regular_normal(&w("aabb")), SElem::E);
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_reductions(&w("ab"), 1).unwrap(), (SElem::A, SElem::B));
        assert_eq!(
            split_reductions(&w("aabb"), 0).unwrap(),
            (SElem::E, SElem::E)
        );
        assert_eq!(
            split_reductions(&w("aabb"), 3).unwrap(),
            (SElem::A, SElem::B)
        );
        assert_eq!(
            split_reductions(&w("ba"), 1),
            Err(Error::NotPseudonull("ba".into()))
        );
        assert_eq!(
            split_reductions(&w("ab"), 3),
            Err(Error::InvalidSplit { k: 3, len: 2 })
        );
    }

    #[test]
    fn maximal_family_erases_everything_erasable() {
        let word = w("bbaaabbaabababbabaa");
        let t = maximal_family(&word);
        assert_eq!(t.survivor, w("bbaaa"));
        assert_eq!(t.intervals(), vec![(3, 7), (7, 15), (15, 17)]);
        for block in &t.blocks {
            assert!(pseudonull_recursive(&block.subsequence()));
        }
    }

    #[test]
    fn decomposition_of_regular_trace() {
        let word = w("abbaab");
        let t = maximal_family(&word);
        let segs = block_decomposition(&t).unwrap();
        let kinds: Vec<_> = segs.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                SegmentKind::Reduced,
                SegmentKind::Residual,
                SegmentKind::Reduced
            ]
        );
        assert_eq!(segs[1].positions.subsequence(), w("ba"));
        let t = ReductionTrace::from_intervals(&word, &[]).unwrap();
        assert!(block_decomposition(&t).is_none());
    }
}

//! Structural properties of pseudonull words and reducing families,
//! checked on every word up to a length bound.

use super::{over_words, select, CheckOptions, Suite, SuiteReport};
use crate::bicyclic::SElem;
use crate::error::{Error, Result};
use crate::finite_words::{
    block_decomposition, maximal_family, pseudonull_recursive, reduce_deletion, reduce_families,
    regular_normal, regular_normal_exhaustive, split_reductions, subset_ops, FiniteWord, Letter,
    PositionSet, PseudonullTable, SegmentKind, FAMILIES_MAX_LEN,
};

pub const LEMMA_ITEMS: [&str; 11] = ["a", "a1", "b", "c", "d", "e", "f", "g1", "g2", "h", "kappa"];

pub(super) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn families(
    w: &FiniteWord,
) -> std::result::Result<Vec<crate::finite_words::ReductionTrace<'_>>, String> {
    reduce_families(w).map_err(|e| e.to_string())
}

fn split_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    if !pseudonull_recursive(w) {
        return Ok(0);
    }
    for k in 0..=w.len() {
        let (p, q) = split_reductions(w, k).map_err(|e| e.to_string())?;
        let ok = matches!((p, q), (SElem::Normal(0, n), SElem::Normal(n2, 0)) if n == n2);
        ensure(ok, || format!("split at {k} gives ({p}, {q})"))?;
    }
    Ok(w.len() as u64 + 1)
}

fn ends_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    if w.is_empty() || !pseudonull_recursive(w) {
        return Ok(0);
    }
    let l = w.letters();
    ensure(l[0] == Letter::A && l[l.len() - 1] == Letter::B, || {
        "pseudonull but does not run from a to b".into()
    })?;
    Ok(1)
}

fn decomposition_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let mut n = 0;
    for t in families(w)?.iter().filter(|t| t.is_regularizing()) {
        let segs = block_decomposition(t).ok_or("regularizing trace without decomposition")?;
        let mut residue = Vec::new();
        let mut covered = 0;
        for (i, s) in segs.iter().enumerate() {
            ensure(s.positions.positions().first() == Some(&covered), || {
                format!("segments of {:?} leave a gap", t.intervals())
            })?;
            covered += s.positions.len();
            if i > 0 {
                ensure(segs[i - 1].kind != s.kind, || {
                    "adjacent segments of the same kind".into()
                })?;
            }
            match s.kind {
                SegmentKind::Reduced => {
                    ensure(pseudonull_recursive(&s.positions.subsequence()), || {
                        format!("reduced segment {} is not pseudonull", s.positions)
                    })?
                }
                SegmentKind::Residual => {
                    residue.extend_from_slice(s.positions.subsequence().letters())
                }
            }
        }
        ensure(covered == w.len(), || {
            "segments do not cover the word".into()
        })?;
        ensure(FiniteWord::new(residue) == t.survivor, || {
            "residual runs do not spell the survivor".into()
        })?;
        n += 1;
    }
    Ok(n)
}

pub(super) fn maximal_survivor_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let t = maximal_family(w);
    ensure(!t.survivor.contains_ab(), || {
        format!("maximal survivor {} contains ab", t.survivor)
    })?;
    for b in &t.blocks {
        ensure(pseudonull_recursive(&b.subsequence()), || {
            format!("block {b} is not pseudonull")
        })?;
    }
    ensure(t.normal == Some(reduce_deletion(w)), || {
        format!(
            "maximal survivor {} differs from the deletion residue",
            t.survivor
        )
    })?;
    Ok(1)
}

pub(super) fn pseudonull_sets(w: &FiniteWord) -> Vec<PositionSet<'_>> {
    PseudonullTable::new(w)
        .intervals()
        .into_iter()
        .filter(|(s, e)| e > s)
        .map(|(s, e)| PositionSet::interval(w, s, e).expect("table intervals are in range"))
        .collect()
}

pub(super) fn pair_item(w: &FiniteWord, differences: bool) -> std::result::Result<u64, String> {
    let sets = pseudonull_sets(w);
    let mut n = 0;
    for h in &sets {
        for k in &sets {
            let ops = subset_ops(h, k).map_err(|e| e.to_string())?;
            let parts: &[(&str, &PositionSet)] = if differences {
                &[("H \\ K", &ops.h_minus_k), ("K \\ H", &ops.k_minus_h)]
            } else {
                &[("H & K", &ops.intersection)]
            };
            for (label, p) in parts {
                ensure(pseudonull_recursive(&p.subsequence()), || {
                    format!("H = {h}, K = {k}: {label} = {p} is not pseudonull")
                })?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn uniqueness_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let all = families(w)?;
    let mut regular = all.iter().filter(|t| t.is_regularizing());
    let Some(first) = regular.next() else {
        return Err("no regularizing family".into());
    };
    let mut n = 1;
    for t in regular {
        ensure(t.normal == first.normal && t.kept == first.kept, || {
            format!(
                "families {:?} and {:?} leave {} at {} and {} at {}",
                first.intervals(),
                t.intervals(),
                first.survivor,
                first.kept,
                t.survivor,
                t.kept
            )
        })?;
        n += 1;
    }
    Ok(n)
}

fn survivor_pseudonull_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    if !pseudonull_recursive(w) {
        return Ok(0);
    }
    let all = families(w)?;
    for t in &all {
        ensure(pseudonull_recursive(&t.survivor), || {
            format!(
                "family {:?} leaves non-pseudonull {}",
                t.intervals(),
                t.survivor
            )
        })?;
    }
    Ok(all.len() as u64)
}

fn converse_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let all = families(w)?;
    let witness = all.iter().find(|t| pseudonull_recursive(&t.survivor));
    if let Some(t) = witness {
        ensure(pseudonull_recursive(w), || {
            format!(
                "family {:?} leaves pseudonull {} but the word is not pseudonull",
                t.intervals(),
                t.survivor
            )
        })?;
    }
    Ok(all.len() as u64)
}

fn normal_invariance_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let v = regular_normal(w);
    let exhaustive = regular_normal_exhaustive(w).map_err(|e| e.to_string())?;
    ensure(exhaustive == Some(v), || {
        format!("family search gives {exhaustive:?}, deletion gives {v}")
    })?;
    let all = families(w)?;
    for t in &all {
        let s = regular_normal(&t.survivor);
        ensure(s == v, || {
            format!(
                "family {:?}: survivor {} has normal form {s}, the word {v}",
                t.intervals(),
                t.survivor
            )
        })?;
    }
    Ok(all.len() as u64 + 1)
}

pub(super) fn partial_removal_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let v = reduce_deletion(w);
    let all = families(w)?;
    for t in &all {
        let s = reduce_deletion(&t.survivor);
        ensure(s == v, || {
            format!(
                "removing {:?} changes the reduced form from {v} to {s}",
                t.intervals()
            )
        })?;
    }
    Ok(all.len() as u64)
}

/// Runs the lemma items on every word of length `<= opts.max_len`.
pub fn lemma_suite(opts: &CheckOptions) -> Result<SuiteReport> {
    if opts.max_len > FAMILIES_MAX_LEN {
        return Err(Error::TooLong {
            what: "lemma suite word length",
            len: opts.max_len,
            bound: FAMILIES_MAX_LEN,
        });
    }
    let keep = select(&LEMMA_ITEMS, opts.item.as_deref(), Suite::Lemma)?;
    type Check = fn(&FiniteWord) -> std::result::Result<u64, String>;
    let table: [(&str, &str, Check); 11] = [
        (
            "a",
            "pseudonull word split anywhere reduces to a^n | b^n",
            split_item,
        ),
        (
            "a1",
            "nonempty pseudonull words start with a and end with b",
            ends_item,
        ),
        (
            "b",
            "regularizing families decompose into pseudonull and residual runs",
            decomposition_item,
        ),
        (
            "c",
            "the maximal family leaves no ab and reaches the reduced form",
            maximal_survivor_item,
        ),
        (
            "d",
            "intersections of convex pseudonull sets are pseudonull",
            |w| pair_item(w, false),
        ),
        (
            "e",
            "differences of convex pseudonull sets are pseudonull",
            |w| pair_item(w, true),
        ),
        (
            "f",
            "all regularizing families leave the same survivor",
            uniqueness_item,
        ),
        (
            "g1",
            "families of a pseudonull word leave pseudonull survivors",
            survivor_pseudonull_item,
        ),
        (
            "g2",
            "a pseudonull survivor forces a pseudonull word",
            converse_item,
        ),
        (
            "h",
            "every family preserves the regular normal form",
            normal_invariance_item,
        ),
        (
            "kappa",
            "removing any family preserves the reduced form",
            partial_removal_item,
        ),
    ];
    let items = table
        .into_iter()
        .filter(|(name, _, _)| keep(name))
        .map(|(name, desc, check)| over_words(name, desc, opts.max_len, check))
        .collect();
    Ok(SuiteReport {
        suite: Suite::Lemma,
        items,
        axioms: None,
    })
}

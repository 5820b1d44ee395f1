//! Properties of pseudonull strings and reduced forms, plus the worked
//! fixtures.

use super::lemma::{
    ensure, maximal_survivor_item, pair_item, partial_removal_item, pseudonull_sets,
};
use super::{fixture, over_words, select, CheckItem, CheckOptions, Suite, SuiteReport};
use crate::bicyclic::SElem;
use crate::error::{Error, Result};
use crate::finite_words::{
    counting_failure, maximal_family, pseudonull_counting, pseudonull_recursive, reduce_deletion,
    reduce_families, satisfies_p1, satisfies_p2, satisfies_p3, FiniteWord, Letter,
    FAMILIES_MAX_LEN,
};
use crate::omega_words::{
    classify_omega, stabilization_bound, truncation_oracle, verdict_agrees, PeriodicWord,
    ReducedShape, Verdict,
};

pub const APPENDIX_ITEMS: [&str; 13] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "checkers", "fixtures", "sigma",
];

/// The finite part of the worked `ω`-word: `bba`, then the pseudonull
/// blocks `aabb`, `aabababb`, `ab`, then `aa`, followed by `(ab)^ω`.
pub const SIGMA_PREFIX: &str = "bbaaabbaabababbabaa";

pub fn sigma_fixture() -> PeriodicWord {
    let prefix: FiniteWord = SIGMA_PREFIX.parse().expect("fixture spelled in a and b");
    let block: FiniteWord = "ab".parse().expect("fixture spelled in a and b");
    PeriodicWord::omega(prefix, block).expect("nonempty block")
}

/// The three pseudonull tests agree on every word of length `<= max_len`:
/// counting, recursive, and reduction to `e`.
pub fn checker_equivalence(max_len: usize) -> CheckItem {
    over_words(
        "checkers",
        "counting, recursive and deletion pseudonull tests agree",
        max_len,
        |w| {
            let c = pseudonull_counting(w);
            let r = pseudonull_recursive(w);
            let d = reduce_deletion(w) == SElem::E;
            ensure(c == r && r == d, || {
                format!("counting {c}, recursive {r}, deletion {d}")
            })?;
            Ok(1)
        },
    )
}

fn closure_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let whole = pseudonull_recursive(w);
    let mut n = 0;
    // a pseudonull substring whose removal leaves a pseudonull string
    for u in pseudonull_sets(w) {
        if pseudonull_recursive(&u.complement().subsequence()) {
            ensure(whole, || {
                format!("removing pseudonull {u} leaves a pseudonull string")
            })?;
            n += 1;
        }
    }
    if pseudonull_recursive(w) {
        let wrapped = FiniteWord::new(
            [Letter::A]
                .into_iter()
                .chain(w.letters().iter().copied())
                .chain([Letter::B])
                .collect(),
        );
        ensure(pseudonull_recursive(&wrapped), || {
            format!("a{w}b is not pseudonull")
        })?;
        n += 1;
    }
    Ok(n)
}

fn union_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let sets = pseudonull_sets(w);
    let mut n = 0;
    for (i, h) in sets.iter().enumerate() {
        for (j, k) in sets.iter().enumerate().skip(i) {
            let hk = h.union(k).map_err(|e| e.to_string())?;
            ensure(pseudonull_recursive(&hk.subsequence()), || {
                format!("{h} | {k} = {hk} is not pseudonull")
            })?;
            n += 1;
            for l in &sets[j..] {
                let u = hk.union(l).map_err(|e| e.to_string())?;
                ensure(pseudonull_recursive(&u.subsequence()), || {
                    format!("{h} | {k} | {l} = {u} is not pseudonull")
                })?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn convex_intersection_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let sets = pseudonull_sets(w);
    let mut n = pair_item(w, false)?;
    for h in &sets {
        for k in &sets {
            let i = h.intersection(k).map_err(|e| e.to_string())?;
            ensure(i.is_convex(), || format!("{h} & {k} = {i} is not convex"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn shape_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let t = maximal_family(w);
    ensure(t.survivor.normal_shape().is_some(), || {
        format!("reduced form {} is not b^n a^m", t.survivor)
    })?;
    Ok(1)
}

/// `u · p^ω` for every prefix and block of the given lengths: the
/// classifier's shape is what the oracle converges to.
fn omega_shapes(max_prefix: usize, max_block: usize) -> CheckItem {
    let mut item = CheckItem {
        name: "theta".into(),
        description: "reduced forms are b^n a^m, b^n a^w or b^w; finite ones are b^n a^m".into(),
        cases: 0,
        failures: 0,
        counterexample: None,
    };
    for prefix in FiniteWord::all_up_to(max_prefix) {
        for block in FiniteWord::all_up_to(max_block).filter(|b| !b.is_empty()) {
            let pw = PeriodicWord::omega(prefix.clone(), block.clone()).expect("nonempty block");
            let k = stabilization_bound(&pw);
            let ok = truncation_oracle(&pw, k).map(|t| (verdict_agrees(&pw, &t), t.verdict));
            item.cases += 1;
            let good = matches!(ok, Ok((true, _)));
            if !good {
                item.failures += 1;
                if item.counterexample.is_none() {
                    item.counterexample = Some(format!(
                        "{pw}: classifier says {}, oracle at k = {k} says {:?}",
                        classify_omega(&prefix, &block),
                        ok
                    ));
                }
            }
        }
    }
    item
}

fn iota_item(w: &FiniteWord) -> std::result::Result<u64, String> {
    let t = maximal_family(w);
    let blocks = t.intervals();
    for pair in blocks.windows(2) {
        ensure(pair[0].1 <= pair[1].0, || {
            format!("blocks {blocks:?} overlap")
        })?;
    }
    let expected = match reduce_deletion(w) {
        SElem::Normal(n, m) => FiniteWord::normal(n as usize, m as usize),
        SElem::Absorb => return Err("finite word reduced to O".into()),
    };
    ensure(t.survivor == expected, || {
        format!(
            "family {blocks:?} leaves {}, expected {expected}",
            t.survivor
        )
    })?;
    if w.len() <= FAMILIES_MAX_LEN {
        let listed = reduce_families(w)
            .map_err(|e| e.to_string())?
            .iter()
            .any(|f| f.intervals() == blocks);
        ensure(listed, || {
            format!("family {blocks:?} is missing from the enumeration")
        })?;
    }
    Ok(1)
}

fn fixtures() -> std::result::Result<(), String> {
    let w: FiniteWord = "aaababbabb".parse().map_err(|e: Error| e.to_string())?;
    ensure(pseudonull_counting(&w) && pseudonull_recursive(&w), || {
        "aaababbabb should be pseudonull".into()
    })?;
    ensure(reduce_deletion(&w) == SElem::E, || {
        "aaababbabb should reduce to e".into()
    })?;
    let v: FiniteWord = "baab".parse().map_err(|e: Error| e.to_string())?;
    ensure(
        !pseudonull_counting(&v) && !pseudonull_recursive(&v),
        || "baab should not be pseudonull".into(),
    )?;
    let reason = counting_failure(&v).map(|f| f.describe(&v));
    ensure(reason.as_deref() == Some("(p2) fails at prefix b"), || {
        format!("baab fails with {reason:?}")
    })?;
    ensure(reduce_deletion(&v) == SElem::Normal(1, 1), || {
        "baab should reduce to b a".into()
    })?;
    Ok(())
}

fn sigma() -> std::result::Result<(), String> {
    let pw = sigma_fixture();
    let PeriodicWord::Omega { prefix, block } = &pw else {
        unreachable!("sigma is an omega word")
    };
    let shape = classify_omega(prefix, block);
    ensure(shape == ReducedShape::Finite(2, 3), || {
        format!("sigma classifies as {shape}")
    })?;
    let k = stabilization_bound(&pw);
    let t = truncation_oracle(&pw, k).map_err(|e| e.to_string())?;
    ensure(t.verdict == Verdict::Stabilized(2, 3), || {
        format!("oracle verdict {}", t.verdict)
    })?;
    let fam = maximal_family(prefix);
    ensure(fam.intervals() == [(3, 7), (7, 15), (15, 17)], || {
        format!("prefix family {:?}", fam.intervals())
    })?;
    ensure(fam.survivor.to_string() == "bbaaa", || {
        format!("prefix survivor {}", fam.survivor)
    })?;
    Ok(())
}

/// Runs the appendix items; word items use every word of length
/// `<= opts.max_len`.
pub fn appendix_suite(opts: &CheckOptions) -> Result<SuiteReport> {
    let keep = select(&APPENDIX_ITEMS, opts.item.as_deref(), Suite::Appendix)?;
    let families_ok = opts.max_len <= FAMILIES_MAX_LEN;
    if !families_ok && (opts.item.is_none() || opts.item.as_deref() == Some("kappa")) {
        return Err(Error::TooLong {
            what: "appendix suite word length",
            len: opts.max_len,
            bound: FAMILIES_MAX_LEN,
        });
    }
    let l = opts.max_len;
    let mut items = Vec::new();
    let word_item =
        |name: &str,
         desc: &str,
         f: &(dyn Fn(&FiniteWord) -> std::result::Result<u64, String> + Sync)| {
            keep(name).then(|| over_words(name, desc, l, f))
        };
    items.extend(word_item(
        "alpha",
        "pseudonull strings are closed under wrapping in a...b and reinsertion",
        &closure_item,
    ));
    items.extend(word_item("beta", "pseudonull iff (p1) and (p3)", &|w| {
        ensure(
            pseudonull_recursive(w) == (satisfies_p1(w) && satisfies_p3(w)),
            || "disagrees with (p1)+(p3)".into(),
        )?;
        Ok(1)
    }));
    items.extend(word_item("gamma", "pseudonull iff (p2) and (p3)", &|w| {
        ensure(
            pseudonull_recursive(w) == (satisfies_p2(w) && satisfies_p3(w)),
            || "disagrees with (p2)+(p3)".into(),
        )?;
        Ok(1)
    }));
    items.extend(word_item(
        "delta",
        "intersections of pseudonull substrings are pseudonull substrings",
        &convex_intersection_item,
    ));
    items.extend(word_item(
        "epsilon",
        "differences of pseudonull substrings are pseudonull",
        &|w| pair_item(w, true),
    ));
    items.extend(word_item(
        "zeta",
        "unions of up to three pseudonull substrings are pseudonull",
        &union_item,
    ));
    items.extend(word_item(
        "eta",
        "reduced forms contain no ab",
        &maximal_survivor_item,
    ));
    if keep("theta") {
        let mut finite = over_words("theta", "", l, shape_item);
        let omega = omega_shapes(4, 4);
        finite.cases += omega.cases;
        finite.failures += omega.failures;
        finite.counterexample = finite.counterexample.or(omega.counterexample);
        finite.description = omega.description;
        items.push(finite);
    }
    items.extend(word_item(
        "iota",
        "the reduced form comes from one disjoint family",
        &iota_item,
    ));
    if families_ok {
        items.extend(word_item(
            "kappa",
            "removing some pseudonull substrings keeps the reduced form",
            &partial_removal_item,
        ));
    }
    if keep("checkers") {
        items.push(checker_equivalence(l));
    }
    if keep("fixtures") {
        items.push(fixture(
            "fixtures",
            "aaababbabb is pseudonull, baab fails (p2) at prefix b",
            fixtures(),
        ));
    }
    if keep("sigma") {
        items.push(fixture(
            "sigma",
            "bba.aabb.aabababb.ab.aa.(ab)^w reduces to bbaaa",
            sigma(),
        ));
    }
    Ok(SuiteReport {
        suite: Suite::Appendix,
        items,
        axioms: None,
    })
}

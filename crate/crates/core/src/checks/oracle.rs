//! Closed forms for repetitions against the truncation oracle, and the
//! counter arithmetic against string deletion.

use super::lemma::ensure;
use super::{over_words, CheckItem, CheckOptions, Suite, SuiteReport};
use crate::bicyclic::{fold, SElem};
use crate::finite_words::{reduce_deletion, FiniteWord};
use crate::omega_words::{
    classify_omega, classify_omegastar, eval_periodic, omega_power, omega_star_power,
    stabilization_bound, truncation_oracle, verdict_agrees, zeta_power, PeriodicWord,
};
use crate::transfinite::{apply_grouping, eval, GroupingSpec, ProductTerm};

/// Words of length `<= 12` in the counter fold check.
const FOLD_MAX_LEN: usize = 12;

struct Tally(CheckItem);

impl Tally {
    fn new(name: &str, description: &str) -> Self {
        Tally(CheckItem {
            name: name.into(),
            description: description.into(),
            cases: 0,
            failures: 0,
            counterexample: None,
        })
    }

    fn record(&mut self, r: std::result::Result<(), String>) {
        self.0.cases += 1;
        if let Err(msg) = r {
            self.0.failures += 1;
            self.0.counterexample.get_or_insert(msg);
        }
    }
}

fn blocks(max_block: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max_block)
        .flat_map(move |n| (0..=max_block).map(move |m| (n, m)))
        .filter(|&(n, m)| n + m > 0)
}

fn agree_at_bound(pw: &PeriodicWord) -> std::result::Result<(), String> {
    let k = stabilization_bound(pw);
    for k in [k, k + 1] {
        let t = truncation_oracle(pw, k).map_err(|e| e.to_string())?;
        ensure(verdict_agrees(pw, &t), || {
            format!(
                "{pw}: value {} but the oracle at k = {k} gives {}",
                eval_periodic(pw),
                t.verdict
            )
        })?;
    }
    Ok(())
}

/// The closed-form items: for blocks `b^n a^m` with `n, m <= max_block` and
/// every prefix (or suffix) of length `<= max_affix`, the `ω` and `ω*`
/// classifiers match the oracle, and `ζ` values match both the oracle and
/// the `ZetaSplit` regrouping.
pub fn closed_form_items(max_block: usize, max_affix: usize) -> Vec<CheckItem> {
    let mut omega = Tally::new("omega", "u (b^n a^m)^w: classifier matches oracle");
    let mut star = Tally::new("omegastar", "(b^n a^m)^w* u: classifier matches oracle");
    let mut zeta = Tally::new("zeta", "(b^n a^m)^z: value matches oracle and ZetaSplit");
    let mut powers = Tally::new(
        "powers",
        "x^w, x^w*, x^z are b^n, a^n, e for balanced x, else O",
    );
    for (n, m) in blocks(max_block) {
        let block = FiniteWord::normal(n, m);
        for affix in FiniteWord::all_up_to(max_affix) {
            omega.record(agree_at_bound(
                &PeriodicWord::omega(affix.clone(), block.clone()).expect("nonempty"),
            ));
            star.record(agree_at_bound(
                &PeriodicWord::omega_star(block.clone(), affix).expect("nonempty"),
            ));
        }
        let zw = PeriodicWord::zeta(block.clone()).expect("nonempty");
        zeta.record(agree_at_bound(&zw).and_then(|_| {
            let lit = ProductTerm::lit(SElem::Normal(n as u64, m as u64));
            let split = apply_grouping(&ProductTerm::zeta(lit.clone()), &GroupingSpec::ZetaSplit)
                .map_err(|e| e.to_string())?;
            let (v, s) = (eval_periodic(&zw), eval(&split));
            ensure(v == s && v == eval(&ProductTerm::zeta(lit)), || {
                format!("{zw}: value {v}, ZetaSplit {s}")
            })
        }));
        let x = SElem::Normal(n as u64, m as u64);
        let (w, ws, z) = if n == m {
            (
                SElem::Normal(n as u64, 0),
                SElem::Normal(0, n as u64),
                SElem::E,
            )
        } else {
            (SElem::Absorb, SElem::Absorb, SElem::Absorb)
        };
        powers.record(ensure(
            omega_power(x) == w
                && omega_star_power(x) == ws
                && zeta_power(x) == z
                && eval_periodic(
                    &PeriodicWord::omega(FiniteWord::empty(), block.clone()).expect("nonempty"),
                ) == w,
            || format!("powers of {x}"),
        ));
    }
    vec![omega.0, star.0, zeta.0, powers.0]
}

fn general_blocks(max_len: usize) -> CheckItem {
    let mut t = Tally::new(
        "general",
        "every block and affix up to length 4: all three shapes match the oracle",
    );
    for block in FiniteWord::all_up_to(max_len).filter(|b| !b.is_empty()) {
        for affix in FiniteWord::all_up_to(max_len) {
            t.record(agree_at_bound(
                &PeriodicWord::omega(affix.clone(), block.clone()).expect("nonempty"),
            ));
            t.record(agree_at_bound(
                &PeriodicWord::omega_star(block.clone(), affix).expect("nonempty"),
            ));
        }
        t.record(agree_at_bound(
            &PeriodicWord::zeta(block.clone()).expect("nonempty"),
        ));
    }
    t.0
}

fn duality(max_len: usize) -> CheckItem {
    let mut t = Tally::new(
        "duality",
        "the w* classifier is the mirror of the w classifier",
    );
    for block in FiniteWord::all_up_to(max_len).filter(|b| !b.is_empty()) {
        for affix in FiniteWord::all_up_to(max_len) {
            let direct = classify_omegastar(&block, &affix);
            let mirrored = classify_omega(&affix.mirror(), &block.mirror()).mirror();
            t.record(ensure(direct == mirrored, || {
                format!("block {block}, suffix {affix}: {direct} vs {mirrored}")
            }));
        }
    }
    t.0
}

pub fn oracle_suite(opts: &CheckOptions) -> crate::error::Result<SuiteReport> {
    let mut items = closed_form_items(opts.max_block, opts.max_affix);
    items.push(general_blocks(4));
    items.push(duality(4));
    items.push(over_words(
        "fold",
        "counter fold equals ab deletion",
        FOLD_MAX_LEN,
        |w| {
            let f = fold(w.letters().iter().map(|l| l.as_elem()));
            let d = reduce_deletion(w);
            ensure(f == d, || format!("fold {f}, deletion {d}"))?;
            Ok(1)
        },
    ));
    Ok(SuiteReport {
        suite: Suite::Oracle,
        items,
        axioms: None,
    })
}

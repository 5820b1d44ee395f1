//! Exhaustive and randomized check suites.
//!
//! Word-indexed items enumerate words by increasing length, then
//! lexicographically, so the first counterexample reported is a shortest one.

mod appendix;
mod lemma;
mod oracle;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_words::FiniteWord;
use crate::transfinite::{check_axioms, AxiomReport, HarnessConfig};

pub use appendix::{appendix_suite, checker_equivalence, sigma_fixture, APPENDIX_ITEMS};
pub use lemma::{lemma_suite, LEMMA_ITEMS};
pub use oracle::{closed_form_items, oracle_suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Axioms,
    Lemma,
    Appendix,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Axioms, Suite::Lemma, Suite::Appendix, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Lemma => "lemma",
            Suite::Appendix => "appendix",
            Suite::Oracle => "oracle",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown suite {s:?}; expected axioms, lemma, appendix or oracle"
                ))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOptions {
    /// Longest word enumerated by the word suites.
    pub max_len: usize,
    /// Restrict the lemma or appendix suite to one item.
    pub item: Option<String>,
    /// Largest exponent in the `b^n a^m` blocks of the oracle suite.
    pub max_block: usize,
    /// Longest prefix or suffix paired with those blocks.
    pub max_affix: usize,
    pub harness: HarnessConfig,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_len: 10,
            item: None,
            max_block: 5,
            max_affix: 4,
            harness: HarnessConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub description: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub items: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomReport>,
}

impl SuiteReport {
    pub fn cases(&self) -> u64 {
        self.items.iter().map(|i| i.cases).sum()
    }

    pub fn failures(&self) -> u64 {
        self.items.iter().map(|i| i.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let status = if i.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {:<12} {:>9} cases  {}\n",
                i.name, i.cases, i.description
            ));
            if let Some(c) = &i.counterexample {
                out.push_str(&format!("      counterexample: {c}\n"));
            }
        }
        if let Some(r) = &self.axioms {
            for rec in &r.records {
                out.push_str(&format!(
                    "      case {} ({}): {} on {} gave {} instead of {}; minimized: {} under {}\n",
                    rec.case,
                    rec.axiom,
                    rec.law,
                    rec.term,
                    rec.got,
                    rec.expected,
                    rec.minimized,
                    rec.minimized_law
                ));
            }
        }
        out.push_str(&format!(
            "{} suite: {} items, {} cases, {} failures\n",
            self.suite,
            self.items.len(),
            self.cases(),
            self.failures()
        ));
        out
    }
}

/// Runs `check` on every word of length `<= max_len`. `check` returns the
/// number of assertions made, or a description of the violation.
pub(crate) fn over_words<F>(name: &str, description: &str, max_len: usize, check: F) -> CheckItem
where
    F: Fn(&FiniteWord) -> std::result::Result<u64, String> + Sync,
{
    let words: Vec<FiniteWord> = FiniteWord::all_up_to(max_len).collect();
    let outcomes: Vec<_> = words.par_iter().map(&check).collect();
    let mut item = CheckItem {
        name: name.to_string(),
        description: description.to_string(),
        cases: 0,
        failures: 0,
        counterexample: None,
    };
    for (w, o) in words.iter().zip(outcomes) {
        match o {
            Ok(n) => item.cases += n,
            Err(msg) => {
                item.cases += 1;
                item.failures += 1;
                if item.counterexample.is_none() {
                    item.counterexample = Some(format!("word {:?}: {msg}", w.to_string()));
                }
            }
        }
    }
    item
}

/// A single assertion item.
pub(crate) fn fixture(
    name: &str,
    description: &str,
    result: std::result::Result<(), String>,
) -> CheckItem {
    CheckItem {
        name: name.to_string(),
        description: description.to_string(),
        cases: 1,
        failures: u64::from(result.is_err()),
        counterexample: result.err(),
    }
}

pub(crate) type NameFilter<'a> = Box<dyn Fn(&str) -> bool + 'a>;

/// Keeps only `item` when one is requested, rejecting unknown names.
pub(crate) fn select<'a>(
    known: &'a [&'a str],
    item: Option<&str>,
    suite: Suite,
) -> Result<NameFilter<'a>> {
    match item {
        None => Ok(Box::new(|_| true)),
        Some(want) if known.contains(&want) => {
            let want = want.to_string();
            Ok(Box::new(move |name| name == want))
        }
        Some(want) => Err(Error::Config(format!(
            "unknown item {want:?} for the {suite} suite; known items: {}",
            known.join(", ")
        ))),
    }
}

pub fn run_suite(suite: Suite, opts: &CheckOptions) -> Result<SuiteReport> {
    match suite {
        Suite::Axioms => {
            let r = check_axioms(&opts.harness);
            let items = r
                .by_axiom
                .iter()
                .map(|(axiom, s)| CheckItem {
                    name: axiom.to_string(),
                    description: format!("law instances of ({axiom}) on random terms"),
                    cases: s.checks,
                    failures: s.failures,
                    counterexample: r
                        .records
                        .iter()
                        .find(|rec| rec.axiom == *axiom)
                        .map(|rec| format!("{} under {}", rec.minimized, rec.minimized_law)),
                })
                .collect();
            Ok(SuiteReport {
                suite,
                items,
                axioms: Some(r),
            })
        }
        Suite::Lemma => lemma_suite(opts),
        Suite::Appendix => appendix_suite(opts),
        Suite::Oracle => oracle_suite(opts),
    }
}

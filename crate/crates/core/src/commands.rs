//! The `eval`, `word` and `check` commands, independent of argument parsing.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde_json::json;

use crate::bicyclic::fold;
use crate::checks::{run_suite, CheckOptions, Suite};
use crate::config::Limits;
use crate::dsl::parse_term;
use crate::error::{Error, Result};
use crate::finite_words::{
    counting_failure, degree_bounded, maximal_family, pseudonull_counting, pseudonull_recursive,
    reduce_deletion, reduce_families_bounded, FiniteWord,
};
use crate::report::Report;
use crate::transfinite::{eval, eval_traced};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordCommand {
    Reduce,
    Pseudonull,
    Degree,
    Families,
}

impl WordCommand {
    pub fn name(self) -> &'static str {
        match self {
            WordCommand::Reduce => "reduce",
            WordCommand::Pseudonull => "pseudonull",
            WordCommand::Degree => "degree",
            WordCommand::Families => "families",
        }
    }
}

impl FromStr for WordCommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            WordCommand::Reduce,
            WordCommand::Pseudonull,
            WordCommand::Degree,
            WordCommand::Families,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown word command {s:?}")))
    }
}

fn finish(mut r: Report, started: Instant) -> Report {
    r.wall_time_ms = started.elapsed().as_millis() as u64;
    r
}

/// Evaluates an expression. With `trace`, the report carries the value of
/// every subterm.
pub fn cmd_eval(src: &str, trace: bool) -> Result<Report> {
    let started = Instant::now();
    let term = parse_term(src)?;
    let traced = eval_traced(&term);
    let value = eval(&term);
    if traced.value != value {
        return Err(Error::Invariant(format!(
            "traced evaluation gives {}, direct evaluation {value}",
            traced.value
        )));
    }
    let mut r = Report::new("eval", src);
    r.value = Some(value.into());
    if trace {
        r.text = format!("{}= {value}\n", traced.render());
        r.trace = Some(serde_json::to_value(&traced).expect("traces serialize"));
    } else {
        r.text = format!("{value}\n");
    }
    Ok(finish(r, started))
}

fn check_len(what: &'static str, w: &FiniteWord, bound: usize) -> Result<()> {
    if w.len() > bound {
        return Err(Error::TooLong {
            what,
            len: w.len(),
            bound,
        });
    }
    Ok(())
}

fn intervals_text(iv: &[(usize, usize)]) -> String {
    let parts: Vec<String> = iv.iter().map(|(s, e)| format!("[{s},{e})")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Runs one of the finite-word commands on `text`.
pub fn cmd_word(sub: WordCommand, text: &str, trace: bool, limits: &Limits) -> Result<Report> {
    let started = Instant::now();
    let w: FiniteWord = text.trim().parse()?;
    let mut r = Report::new(format!("word {}", sub.name()), text);
    match sub {
        WordCommand::Reduce => {
            check_len("reduce", &w, limits.reduce)?;
            let v = reduce_deletion(&w);
            let f = fold(w.letters().iter().map(|l| l.as_elem()));
            if f != v {
                return Err(Error::Invariant(format!(
                    "deletion gives {v}, counter fold {f}"
                )));
            }
            r.value = Some(v.into());
            r.text = format!("{v}\n");
            if trace {
                let t = maximal_family(&w);
                let iv = t.intervals();
                let mut s = String::new();
                for &(a, b) in &iv {
                    let _ = writeln!(s, "removed [{a},{b}) {}", w.slice(a, b));
                }
                let _ = writeln!(s, "survivor {} at {}", t.survivor, t.kept);
                r.text = format!("{s}= {v}\n");
                r.trace = Some(
                    json!({ "blocks": iv, "survivor": t.survivor.to_string(), "kept": t.kept.positions() }),
                );
            }
        }
        WordCommand::Pseudonull => {
            check_len("pseudonull", &w, limits.pseudonull)?;
            let counting = pseudonull_counting(&w);
            let recursive = pseudonull_recursive(&w);
            let deletion = reduce_deletion(&w).is_identity();
            if counting != recursive || recursive != deletion {
                return Err(Error::Invariant(format!(
                    "pseudonull checkers disagree on {w}: counting {counting}, recursive {recursive}, deletion {deletion}"
                )));
            }
            let reason = counting_failure(&w).map(|f| f.describe(&w));
            r.text = match &reason {
                Some(why) => format!("false\nreason: {why}\n"),
                None => "true\n".to_string(),
            };
            r.text
                .push_str("checkers agree: counting, recursive, deletion\n");
            r.result = Some(json!({
                "pseudonull": counting,
                "counting": counting,
                "recursive": recursive,
                "deletion": deletion,
                "agree": true,
                "reason": reason,
            }));
        }
        WordCommand::Degree => {
            let d = degree_bounded(&w, limits.degree)?;
            r.text = format!("{}\n", d.0);
            r.result = Some(json!({ "degree": d.0 }));
        }
        WordCommand::Families => {
            let all = reduce_families_bounded(&w, limits.families)?;
            let mut s = String::new();
            let mut docs = Vec::with_capacity(all.len());
            for t in &all {
                let iv = t.intervals();
                let survivor = if t.survivor.is_empty() {
                    "(empty)".to_string()
                } else {
                    t.survivor.to_string()
                };
                match t.normal {
                    Some(v) => {
                        let _ = writeln!(s, "{}  leaves {survivor}  = {v}", intervals_text(&iv));
                    }
                    None => {
                        let _ = writeln!(s, "{}  leaves {survivor}", intervals_text(&iv));
                    }
                }
                docs.push(json!({
                    "blocks": iv,
                    "survivor": t.survivor.to_string(),
                    "normal": t.normal.map(crate::report::ValueDoc::from),
                }));
            }
            let _ = writeln!(s, "{} families", all.len());
            r.text = s;
            r.result = Some(json!({ "count": all.len(), "families": docs }));
        }
    }
    Ok(finish(r, started))
}

/// Runs a check suite. The report's exit code is 0 when every item passes
/// and 3 otherwise.
pub fn cmd_check(suite: Suite, opts: &CheckOptions) -> Result<Report> {
    let started = Instant::now();
    let rep = run_suite(suite, opts)?;
    let mut r = Report::new(format!("check {suite}"), suite.name());
    r.text = rep.render();
    r.exit_code = if rep.passed() { 0 } else { 3 };
    r.stats = Some(json!({
        "cases": rep.cases(),
        "failures": rep.failures(),
        "seed": opts.harness.seed,
        "options": opts,
        "items": rep.items,
        "axioms": rep.axioms,
    }));
    Ok(finish(r, started))
}

//! Ultimately periodic transfinite words: `u p^ω`, `p^ω* u` and `p^ζ`.
//!
//! The reduced form of an `ω`-word `u p^ω` depends only on the normal forms
//! of `u` and `p`, since deleting pseudonull factors inside each copy does
//! not change the reduced form. With `u ~ b^n0 a^m0` and `p ~ b^np a^mp`:
//!
//! - `np = mp`: the trailing `a^np` of each copy cancels against the next
//!   copy's `b^np`, leaving the finite form `b^n0 a^m0 · b^np`;
//! - `np > mp`: every copy adds `np - mp` uncancellable b's, giving `b^ω`;
//! - `np < mp`: the a's pile up to the right, giving `b^k a^ω`.
//!
//! `ω*`-words are handled by duality (reverse the order and swap the
//! letters), and a `ζ`-word is the product of its `ω*` half and its `ω`
//! half. [`truncation_oracle`] checks all of this by reducing explicit finite
//! windows of the word.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bicyclic::SElem;
use crate::error::{Error, Result};
use crate::finite_words::{maximal_family, reduce_deletion, FiniteWord, Letter};

/// Longest explicit window [`truncation_oracle`] will reduce.
pub const TRUNCATION_MAX_LEN: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PeriodicWord {
    /// `prefix · block^ω`
    Omega {
        prefix: FiniteWord,
        block: FiniteWord,
    },
    /// `block^ω* · suffix`
    OmegaStar {
        block: FiniteWord,
        suffix: FiniteWord,
    },
    /// `block^ζ`
    Zeta { block: FiniteWord },
}

fn nonempty(block: FiniteWord) -> Result<FiniteWord> {
    if block.is_empty() {
        Err(Error::Syntax {
            pos: 0,
            message: "the repeated block of a periodic word must be nonempty".into(),
        })
    } else {
        Ok(block)
    }
}

impl PeriodicWord {
    pub fn omega(prefix: FiniteWord, block: FiniteWord) -> Result<Self> {
        Ok(PeriodicWord::Omega {
            prefix,
            block: nonempty(block)?,
        })
    }

    pub fn omega_star(block: FiniteWord, suffix: FiniteWord) -> Result<Self> {
        Ok(PeriodicWord::OmegaStar {
            block: nonempty(block)?,
            suffix,
        })
    }

    pub fn zeta(block: FiniteWord) -> Result<Self> {
        Ok(PeriodicWord::Zeta {
            block: nonempty(block)?,
        })
    }

    pub fn block(&self) -> &FiniteWord {
        match self {
            PeriodicWord::Omega { block, .. }
            | PeriodicWord::OmegaStar { block, .. }
            | PeriodicWord::Zeta { block } => block,
        }
    }

    /// Order reversal plus letter swap; `ω` and `ω*` shapes trade places.
    pub fn mirror(&self) -> PeriodicWord {
        match self {
            PeriodicWord::Omega { prefix, block } => PeriodicWord::OmegaStar {
                block: block.mirror(),
                suffix: prefix.mirror(),
            },
            PeriodicWord::OmegaStar { block, suffix } => PeriodicWord::Omega {
                prefix: suffix.mirror(),
                block: block.mirror(),
            },
            PeriodicWord::Zeta { block } => PeriodicWord::Zeta {
                block: block.mirror(),
            },
        }
    }
}

/// Compact text: `bba w(ab)`, `wrev(ba) aa`, `z(ab)`.
impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodicWord::Omega { prefix, block } if prefix.is_empty() => write!(f, "w({block})"),
            PeriodicWord::Omega { prefix, block } => write!(f, "{prefix} w({block})"),
            PeriodicWord::OmegaStar { block, suffix } if suffix.is_empty() => {
                write!(f, "wrev({block})")
            }
            PeriodicWord::OmegaStar { block, suffix } => write!(f, "wrev({block}) {suffix}"),
            PeriodicWord::Zeta { block } => write!(f, "z({block})"),
        }
    }
}

impl FromStr for PeriodicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let syntax = |message: &str| Error::Syntax {
            pos: 0,
            message: message.to_string(),
        };
        let inner = |rest: &str| -> Result<(FiniteWord, String)> {
            let close = rest.find(')').ok_or_else(|| syntax("missing `)`"))?;
            Ok((
                rest[..close].trim().parse()?,
                rest[close + 1..].trim().to_string(),
            ))
        };
        if let Some(rest) = s.strip_prefix("z(") {
            let (block, tail) = inner(rest)?;
            if !tail.is_empty() {
                return Err(syntax("trailing text after z(...)"));
            }
            return PeriodicWord::zeta(block);
        }
        if let Some(rest) = s.strip_prefix("wrev(") {
            let (block, tail) = inner(rest)?;
            return PeriodicWord::omega_star(block, tail.parse()?);
        }
        let open = s
            .find("w(")
            .ok_or_else(|| syntax("expected w(...), wrev(...) or z(...)"))?;
        let prefix: FiniteWord = s[..open].trim().parse()?;
        let (block, tail) = inner(&s[open + 2..])?;
        if !tail.is_empty() {
            return Err(syntax("trailing text after w(...)"));
        }
        PeriodicWord::omega(prefix, block)
    }
}

/// Reduced form of an `ω`-indexed word: a finite normal form, `b^n a^ω`,
/// or `b^ω`. Nothing else can occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReducedShape {
    Finite(u64, u64),
    /// `b^n a^ω`
    BnAOmega(u64),
    /// `b^ω`
    BOmega,
}

impl ReducedShape {
    pub fn value(self) -> SElem {
        match self {
            ReducedShape::Finite(n, m) => SElem::Normal(n, m),
            _ => SElem::Absorb,
        }
    }

    pub fn mirror(self) -> ReducedShapeStar {
        match self {
            ReducedShape::Finite(n, m) => ReducedShapeStar::Finite(m, n),
            ReducedShape::BnAOmega(n) => ReducedShapeStar::BOmegaStarAn(n),
            ReducedShape::BOmega => ReducedShapeStar::AOmegaStar,
        }
    }
}

/// Reduced form of an `ω*`-indexed word, the mirror image of
/// [`ReducedShape`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReducedShapeStar {
    Finite(u64, u64),
    /// `b^ω* a^m`
    BOmegaStarAn(u64),
    /// `a^ω*`
    AOmegaStar,
}

impl ReducedShapeStar {
    pub fn value(self) -> SElem {
        match self {
            ReducedShapeStar::Finite(n, m) => SElem::Normal(n, m),
            _ => SElem::Absorb,
        }
    }

    pub fn mirror(self) -> ReducedShape {
        match self {
            ReducedShapeStar::Finite(n, m) => ReducedShape::Finite(m, n),
            ReducedShapeStar::BOmegaStarAn(m) => ReducedShape::BnAOmega(m),
            ReducedShapeStar::AOmegaStar => ReducedShape::BOmega,
        }
    }
}

impl fmt::Display for ReducedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ReducedShape::Finite(n, m) => SElem::Normal(n, m).fmt(f),
            ReducedShape::BnAOmega(0) => f.write_str("a^w"),
            ReducedShape::BnAOmega(n) => write!(f, "{} a^w", SElem::Normal(n, 0)),
            ReducedShape::BOmega => f.write_str("b^w"),
        }
    }
}

impl fmt::Display for ReducedShapeStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ReducedShapeStar::Finite(n, m) => SElem::Normal(n, m).fmt(f),
            ReducedShapeStar::BOmegaStarAn(0) => f.write_str("b^w*"),
            ReducedShapeStar::BOmegaStarAn(m) => write!(f, "b^w* {}", SElem::Normal(0, m)),
            ReducedShapeStar::AOmegaStar => f.write_str("a^w*"),
        }
    }
}

/// Reduced shape of `x · y^ω` from the normal forms of `x` and `y`.
pub fn omega_tail(prefix: (u64, u64), block: (u64, u64)) -> ReducedShape {
    let (n0, m0) = prefix;
    let (np, mp) = block;
    if np == mp {
        match SElem::Normal(n0, m0) * SElem::Normal(np, 0) {
            SElem::Normal(n, m) => ReducedShape::Finite(n, m),
            SElem::Absorb => unreachable!("product of normal forms is normal"),
        }
    } else if np > mp {
        ReducedShape::BOmega
    } else {
        ReducedShape::BnAOmega(n0 + np.saturating_sub(m0))
    }
}

fn word_counters(w: &FiniteWord) -> (u64, u64) {
    reduce_deletion(w)
        .counters()
        .expect("finite words reduce to normal forms")
}

pub fn classify_omega(prefix: &FiniteWord, block: &FiniteWord) -> ReducedShape {
    omega_tail(word_counters(prefix), word_counters(block))
}

/// Classifies `block^ω* · suffix` through the mirror `ω`-word.
pub fn classify_omegastar(block: &FiniteWord, suffix: &FiniteWord) -> ReducedShapeStar {
    classify_omega(&suffix.mirror(), &block.mirror()).mirror()
}

/// Value in `S` of a periodic word: its finite normal form when regular,
/// `Ω` otherwise. A `ζ`-word is split into its `ω*` and `ω` halves.
pub fn eval_periodic(w: &PeriodicWord) -> SElem {
    match w {
        PeriodicWord::Omega { prefix, block } => classify_omega(prefix, block).value(),
        PeriodicWord::OmegaStar { block, suffix } => classify_omegastar(block, suffix).value(),
        PeriodicWord::Zeta { block } => {
            let left = classify_omegastar(block, &FiniteWord::empty()).value();
            let right = classify_omega(&FiniteWord::empty(), block).value();
            left * right
        }
    }
}

/// `x^ω` in `S`.
pub fn omega_power(x: SElem) -> SElem {
    match x {
        SElem::Normal(n, m) => omega_tail((0, 0), (n, m)).value(),
        SElem::Absorb => SElem::Absorb,
    }
}

/// `x^ω*` in `S`.
pub fn omega_star_power(x: SElem) -> SElem {
    omega_power(x.mirror()).mirror()
}

/// `x^ζ` in `S`, grouped as `x^ω* · x^ω`.
pub fn zeta_power(x: SElem) -> SElem {
    omega_star_power(x) * omega_power(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Both windows reduce to the same `b^n a^m`.
    Stabilized(u64, u64),
    /// The a-count grows with the window, the b-count does not.
    AGrowing,
    /// The b-count grows with the window.
    BGrowing,
    /// Neither, which happens only before the window is long enough.
    Unsettled,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Verdict::Stabilized(n, m) => write!(f, "stabilized({n},{m})"),
            Verdict::AGrowing => f.write_str("a-growing"),
            Verdict::BGrowing => f.write_str("b-growing"),
            Verdict::Unsettled => f.write_str("unsettled"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub at_k: SElem,
    pub at_k_plus_1: SElem,
    pub verdict: Verdict,
}

/// Letters of `window` that survive `ab` deletion of `left · window · right`.
///
/// One extra copy of the block on each open side lets letters at the cut
/// meet the partners they would have in the infinite word; without it the
/// trailing a's of `(ba)^k` would survive although `(ba)^ω` cancels them.
fn committed(left: &FiniteWord, window: &FiniteWord, right: &FiniteWord) -> Result<SElem> {
    let full = left.concat(window).concat(right);
    if full.len() > TRUNCATION_MAX_LEN {
        return Err(Error::TooLong {
            what: "truncation",
            len: full.len(),
            bound: TRUNCATION_MAX_LEN,
        });
    }
    let range = left.len()..left.len() + window.len();
    let trace = maximal_family(&full);
    let (mut n, mut m) = (0, 0);
    for &i in trace.kept.positions() {
        if range.contains(&i) {
            match full.letters()[i] {
                Letter::B => n += 1,
                Letter::A => m += 1,
            }
        }
    }
    Ok(SElem::Normal(n, m))
}

fn window(w: &PeriodicWord, k: usize) -> Result<SElem> {
    let empty = FiniteWord::empty();
    match w {
        PeriodicWord::Omega { prefix, block } => {
            committed(&empty, &prefix.concat(&block.repeat(k)), block)
        }
        PeriodicWord::OmegaStar { block, suffix } => {
            committed(block, &block.repeat(k).concat(suffix), &empty)
        }
        PeriodicWord::Zeta { block } => committed(block, &block.repeat(k), block),
    }
}

/// Reduces the windows with `k` and `k + 1` copies of the block and
/// compares them.
pub fn truncation_oracle(w: &PeriodicWord, k: usize) -> Result<Truncation> {
    if k == 0 {
        return Err(Error::ZeroRepetitions);
    }
    let at_k = window(w, k)?;
    let at_k_plus_1 = window(w, k + 1)?;
    let (n1, m1) = at_k.counters().expect("normal");
    let (n2, m2) = at_k_plus_1.counters().expect("normal");
    let verdict = if (n1, m1) == (n2, m2) {
        Verdict::Stabilized(n1, m1)
    } else if n2 > n1 {
        Verdict::BGrowing
    } else if n2 == n1 && m2 > m1 {
        Verdict::AGrowing
    } else {
        Verdict::Unsettled
    };
    Ok(Truncation {
        at_k,
        at_k_plus_1,
        verdict,
    })
}

/// Repetitions after which the oracle is expected to have settled.
pub fn stabilization_bound(w: &PeriodicWord) -> usize {
    let finite_part = match w {
        PeriodicWord::Omega { prefix, .. } => prefix.len(),
        PeriodicWord::OmegaStar { suffix, .. } => suffix.len(),
        PeriodicWord::Zeta { .. } => 0,
    };
    finite_part + 2 * w.block().len() + 4
}

/// Whether an oracle verdict is the one the classifier predicts.
pub fn verdict_agrees(w: &PeriodicWord, t: &Truncation) -> bool {
    let (n, m) = t.at_k.counters().expect("normal");
    match w {
        PeriodicWord::Omega { prefix, block } => match classify_omega(prefix, block) {
            ReducedShape::Finite(a, b) => t.verdict == Verdict::Stabilized(a, b),
            ReducedShape::BnAOmega(k) => t.verdict == Verdict::AGrowing && n == k,
            ReducedShape::BOmega => t.verdict == Verdict::BGrowing,
        },
        PeriodicWord::OmegaStar { block, suffix } => match classify_omegastar(block, suffix) {
            ReducedShapeStar::Finite(a, b) => t.verdict == Verdict::Stabilized(a, b),
            ReducedShapeStar::BOmegaStarAn(k) => t.verdict == Verdict::BGrowing && m == k,
            ReducedShapeStar::AOmegaStar => t.verdict == Verdict::AGrowing,
        },
        PeriodicWord::Zeta { .. } => match eval_periodic(w) {
            SElem::Normal(a, b) => t.verdict == Verdict::Stabilized(a, b),
            SElem::Absorb => matches!(t.verdict, Verdict::AGrowing | Verdict::BGrowing),
        },
    }
}

//! Randomized checking of the infinitary laws on generated terms.
//!
//! Each case draws a term and checks every law instance that applies to it:
//! singleton products (U), regroupings at every node (N), reindexings (Iso),
//! identity insertion and deletion (Id), and absorption by `Ω`. Cases are
//! independent and seeded from `(seed, case index)`, so reports do not
//! depend on thread scheduling.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::grouping::{apply_grouping_at, GroupingSpec};
use super::identities::{
    canonicalize, insert_identities, rotate, strip_identities, IdentityDirective, RepeatKind, Side,
};
use super::{eval, ProductTerm};
use crate::bicyclic::SElem;

/// Failure records kept per report; later failures are only counted.
const MAX_RECORDS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessConfig {
    pub seed: u64,
    pub cases: usize,
    pub depth: usize,
    pub max_arity: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 42,
            cases: 1000,
            depth: 5,
            max_arity: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    U,
    N,
    Iso,
    Id,
    Absorbing,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::U => "U",
            Axiom::N => "N",
            Axiom::Iso => "Iso",
            Axiom::Id => "Id",
            Axiom::Absorbing => "Absorbing",
        })
    }
}

/// The four regrouping families checked under (N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Schema {
    CatBlocks,
    OmegaChunk,
    OmegaPeel,
    ZetaSplit,
}

impl Schema {
    fn of(g: &GroupingSpec) -> Schema {
        match g {
            GroupingSpec::CatBlocks(_) => Schema::CatBlocks,
            GroupingSpec::OmegaChunk(_) => Schema::OmegaChunk,
            GroupingSpec::OmegaPeel(_) => Schema::OmegaPeel,
            GroupingSpec::ZetaSplit => Schema::ZetaSplit,
        }
    }
}

/// One concrete law instance: a rewrite of a term that must keep its value,
/// or (for `Absorb`) force it to `Ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Law {
    Singleton,
    Group {
        path: Vec<usize>,
        spec: GroupingSpec,
    },
    Canonical,
    SourceRoundTrip,
    Rotate {
        path: Vec<usize>,
    },
    Insert(IdentityDirective),
    Strip,
    Absorb {
        path: Vec<usize>,
    },
}

impl Law {
    pub fn axiom(&self) -> Axiom {
        match self {
            Law::Singleton => Axiom::U,
            Law::Group { .. } => Axiom::N,
            Law::Canonical | Law::SourceRoundTrip | Law::Rotate { .. } => Axiom::Iso,
            Law::Insert(_) | Law::Strip => Axiom::Id,
            Law::Absorb { .. } => Axiom::Absorbing,
        }
    }

    /// The rewritten term and the value it must have, given `value = eval(t)`.
    fn apply(&self, t: &ProductTerm, value: SElem) -> Option<(ProductTerm, SElem)> {
        let same = |u: ProductTerm| Some((u, value));
        match self {
            Law::Singleton => same(ProductTerm::Cat(vec![t.clone()])),
            Law::Group { path, spec } => apply_grouping_at(t, path, spec).ok().and_then(same),
            Law::Canonical => same(canonicalize(t)),
            Law::SourceRoundTrip => {
                let src = t.to_string();
                let parsed = crate::dsl::parse(&src).ok()?;
                same(parsed.lower())
            }
            Law::Rotate { path } => t.replace_at(path, rotate).ok().and_then(same),
            Law::Insert(d) => same(insert_identities(t, d)),
            Law::Strip => same(strip_identities(t)),
            Law::Absorb { path } => {
                let u = t
                    .replace_at(path, |_| Ok(ProductTerm::Lit(SElem::Absorb)))
                    .ok()?;
                Some((u, SElem::Absorb))
            }
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Singleton => f.write_str("singleton"),
            Law::Group { path, spec } => write!(f, "{spec} at {path:?}"),
            Law::Canonical => f.write_str("canonical form"),
            Law::SourceRoundTrip => f.write_str("source round trip"),
            Law::Rotate { path } => write!(f, "rotate at {path:?}"),
            Law::Insert(d) => write!(f, "insert {d:?}"),
            Law::Strip => f.write_str("strip identities"),
            Law::Absorb { path } => write!(f, "O at {path:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawStats {
    pub checks: u64,
    pub failures: u64,
}

impl LawStats {
    fn add(&mut self, other: LawStats) {
        self.checks += other.checks;
        self.failures += other.failures;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub case: usize,
    pub axiom: Axiom,
    pub law: String,
    pub term: String,
    pub expected: SElem,
    pub got: SElem,
    /// Smallest term found by greedy shrinking that still breaks the same
    /// axiom, with the law instance that breaks it.
    pub minimized: String,
    pub minimized_law: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub config: HarnessConfig,
    pub checks: u64,
    pub failures: u64,
    pub by_axiom: BTreeMap<Axiom, LawStats>,
    pub by_schema: BTreeMap<Schema, LawStats>,
    pub records: Vec<FailureRecord>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn leaf(rng: &mut ChaCha8Rng) -> ProductTerm {
    if rng.gen_bool(0.02) {
        return ProductTerm::Lit(SElem::Absorb);
    }
    match rng.gen_range(0..10) {
        0..=2 => ProductTerm::a(),
        3..=5 => ProductTerm::b(),
        6 => ProductTerm::e(),
        _ => ProductTerm::Lit(SElem::Normal(rng.gen_range(0..=3), rng.gen_range(0..=3))),
    }
}

fn gen(rng: &mut ChaCha8Rng, depth: usize, max_arity: usize) -> ProductTerm {
    if depth <= 1 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let choice = rng.gen_range(0..10);
    if choice < 4 {
        let arity = rng.gen_range(0..=max_arity);
        return ProductTerm::Cat((0..arity).map(|_| gen(rng, depth - 1, max_arity)).collect());
    }
    // an unbalanced body makes the whole repetition Ω, so half the time the
    // body is padded to a balanced value
    let balance = depth >= 3 && rng.gen_bool(0.5);
    let mut body = gen(rng, depth - 1 - usize::from(balance), max_arity);
    if balance {
        if let SElem::Normal(n, m) = eval(&body) {
            if n != m {
                body = ProductTerm::Cat(vec![body, ProductTerm::Lit(SElem::Normal(m, n))]);
            }
        }
    }
    match choice {
        4..=5 => ProductTerm::omega(body),
        6..=7 => ProductTerm::omega_star(body),
        _ => ProductTerm::zeta(body),
    }
}

/// A random term of depth at most `depth` with `Cat` arity at most
/// `max_arity`.
pub fn generate_term(rng: &mut ChaCha8Rng, depth: usize, max_arity: usize) -> ProductTerm {
    gen(rng, depth.max(1), max_arity)
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    (0..1u32 << (n - 1))
        .map(|mask| {
            let mut sizes = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if mask >> i & 1 == 1 {
                    sizes.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            sizes.push(run);
            sizes
        })
        .collect()
}

fn random_composition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut run = 1;
    for _ in 1..n {
        if rng.gen_bool(0.5) {
            sizes.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    sizes.push(run);
    sizes
}

const KINDS: [RepeatKind; 3] = [RepeatKind::Omega, RepeatKind::OmegaStar, RepeatKind::Zeta];

/// Law instances for `t`. With `rng`, parameters are sampled (one
/// composition per `Cat`, one directive of each shape per node); without,
/// every parameter in the small fixed ranges is listed.
fn laws_for(t: &ProductTerm, mut rng: Option<&mut ChaCha8Rng>) -> Vec<Law> {
    let mut out = vec![
        Law::Singleton,
        Law::Canonical,
        Law::SourceRoundTrip,
        Law::Strip,
    ];
    for path in t.paths() {
        let node = t.at(&path).expect("listed path");
        let mut group = |spec| {
            out.push(Law::Group {
                path: path.clone(),
                spec,
            })
        };
        match node {
            ProductTerm::Cat(items) if !items.is_empty() => match rng.as_deref_mut() {
                Some(r) => group(GroupingSpec::CatBlocks(random_composition(r, items.len()))),
                None => compositions(items.len())
                    .into_iter()
                    .for_each(|c| group(GroupingSpec::CatBlocks(c))),
            },
            ProductTerm::OmegaPow(_) | ProductTerm::OmegaStarPow(_) => {
                for k in [2, 3] {
                    group(GroupingSpec::OmegaChunk(k));
                }
                for j in [1, 2, 3] {
                    group(GroupingSpec::OmegaPeel(j));
                }
            }
            ProductTerm::ZetaPow(_) => group(GroupingSpec::ZetaSplit),
            _ => {}
        }
        if matches!(
            node,
            ProductTerm::OmegaPow(_) | ProductTerm::OmegaStarPow(_) | ProductTerm::ZetaPow(_)
        ) {
            out.push(Law::Rotate { path: path.clone() });
        }
        let arity = node.children().len();
        match rng.as_deref_mut() {
            Some(r) => {
                out.push(Law::Insert(IdentityDirective::Splice {
                    path: path.clone(),
                    index: r.gen_range(0..=arity),
                }));
                out.push(Law::Insert(IdentityDirective::Wrap {
                    path: path.clone(),
                    before: r.gen_range(0..=2),
                    after: r.gen_range(0..=2),
                }));
                out.push(Law::Insert(IdentityDirective::Repeat {
                    path: path.clone(),
                    kind: KINDS[r.gen_range(0..3)],
                    side: if r.gen_bool(0.5) {
                        Side::Before
                    } else {
                        Side::After
                    },
                }));
            }
            None => {
                for index in [0, arity] {
                    out.push(Law::Insert(IdentityDirective::Splice {
                        path: path.clone(),
                        index,
                    }));
                }
                out.push(Law::Insert(IdentityDirective::Wrap {
                    path: path.clone(),
                    before: 1,
                    after: 1,
                }));
                for kind in KINDS {
                    for side in [Side::Before, Side::After] {
                        out.push(Law::Insert(IdentityDirective::Repeat {
                            path: path.clone(),
                            kind,
                            side,
                        }));
                    }
                }
            }
        }
        out.push(Law::Absorb { path });
    }
    out
}

/// First law of `axiom` that `t` breaks under `ev`, over the exhaustive
/// law list.
fn breaks<F>(t: &ProductTerm, axiom: Axiom, ev: &F) -> Option<Law>
where
    F: Fn(&ProductTerm) -> SElem + ?Sized,
{
    let value = ev(t);
    laws_for(t, None)
        .into_iter()
        .filter(|l| l.axiom() == axiom)
        .find(|l| matches!(l.apply(t, value), Some((u, want)) if ev(&u) != want))
}

fn shrink_candidates(t: &ProductTerm) -> Vec<ProductTerm> {
    let mut out = Vec::new();
    for path in t.paths() {
        let node = t.at(&path).expect("listed path");
        let mut put = |u: ProductTerm| {
            if let Ok(v) = t.replace_at(&path, |_| Ok(u)) {
                out.push(v);
            }
        };
        for c in node.children() {
            put(c.clone());
        }
        match node {
            ProductTerm::Cat(items) => {
                for i in 0..items.len() {
                    let mut fewer = items.clone();
                    fewer.remove(i);
                    put(ProductTerm::Cat(fewer));
                }
            }
            ProductTerm::Lit(SElem::Normal(n, m)) => {
                if *n > 0 {
                    put(ProductTerm::Lit(SElem::Normal(n - 1, *m)));
                }
                if *m > 0 {
                    put(ProductTerm::Lit(SElem::Normal(*n, m - 1)));
                }
            }
            _ => {}
        }
    }
    out.sort_by_key(ProductTerm::size);
    out
}

/// Greedy shrinking: repeatedly moves to the smallest candidate (a subterm
/// hoisted, a `Cat` factor dropped, or a literal decremented) that still
/// breaks `axiom` under `ev`. Returns `t` itself when nothing smaller fails.
pub fn shrink<F>(t: &ProductTerm, axiom: Axiom, ev: &F) -> ProductTerm
where
    F: Fn(&ProductTerm) -> SElem + ?Sized,
{
    let mut cur = t.clone();
    'outer: loop {
        for cand in shrink_candidates(&cur) {
            if breaks(&cand, axiom, ev).is_some() {
                cur = cand;
                continue 'outer;
            }
        }
        return cur;
    }
}

struct CaseOutcome {
    stats: BTreeMap<Axiom, LawStats>,
    schemas: BTreeMap<Schema, LawStats>,
    failures: Vec<(Law, ProductTerm, SElem, SElem)>,
}

fn run_case<F>(cfg: &HarnessConfig, case: usize, ev: &F) -> CaseOutcome
where
    F: Fn(&ProductTerm) -> SElem + ?Sized,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(case as u64);
    let t = generate_term(&mut rng, cfg.depth, cfg.max_arity);
    let value = ev(&t);
    let mut out = CaseOutcome {
        stats: BTreeMap::new(),
        schemas: BTreeMap::new(),
        failures: Vec::new(),
    };
    for law in laws_for(&t, Some(&mut rng)) {
        let Some((u, want)) = law.apply(&t, value) else {
            continue;
        };
        let got = ev(&u);
        let s = LawStats {
            checks: 1,
            failures: u64::from(got != want),
        };
        out.stats.entry(law.axiom()).or_default().add(s);
        if let Law::Group { spec, .. } = &law {
            out.schemas.entry(Schema::of(spec)).or_default().add(s);
        }
        if got != want {
            out.failures.push((law, t.clone(), want, got));
        }
    }
    out
}

/// Runs the law checks with the reference evaluator.
pub fn check_axioms(cfg: &HarnessConfig) -> AxiomReport {
    check_axioms_with(cfg, &eval)
}

/// Runs the law checks against an arbitrary evaluator.
pub fn check_axioms_with<F>(cfg: &HarnessConfig, ev: &F) -> AxiomReport
where
    F: Fn(&ProductTerm) -> SElem + Sync + ?Sized,
{
    let outcomes: Vec<CaseOutcome> = (0..cfg.cases)
        .into_par_iter()
        .map(|i| run_case(cfg, i, ev))
        .collect();
    let mut report = AxiomReport {
        config: cfg.clone(),
        checks: 0,
        failures: 0,
        by_axiom: BTreeMap::new(),
        by_schema: BTreeMap::new(),
        records: Vec::new(),
    };
    for (case, o) in outcomes.into_iter().enumerate() {
        for (k, s) in o.stats {
            report.checks += s.checks;
            report.failures += s.failures;
            report.by_axiom.entry(k).or_default().add(s);
        }
        for (k, s) in o.schemas {
            report.by_schema.entry(k).or_default().add(s);
        }
        for (law, term, expected, got) in o.failures {
            if report.records.len() >= MAX_RECORDS {
                break;
            }
            let axiom = law.axiom();
            let small = shrink(&term, axiom, ev);
            let small_law =
                breaks(&small, axiom, ev).map_or_else(|| law.to_string(), |l| l.to_string());
            report.records.push(FailureRecord {
                case,
                axiom,
                law: law.to_string(),
                term: term.to_string(),
                expected,
                got,
                minimized: small.to_string(),
                minimized_law: small_law,
            });
        }
    }
    report
}

//! Transfinite products over `S`.
//!
//! A [`ProductTerm`] denotes an indexed family of elements of `S` whose index
//! order is built from finite sums and `ω`, `ω*`, `ζ` repetitions; its value
//! is computed bottom-up. Every node is itself a product over a convex piece
//! of the index order, so by generalized associativity the value of a node
//! only depends on the values of its children.

mod grouping;
mod harness;
mod identities;

use std::fmt;

use serde::Serialize;

use crate::bicyclic::{fold, SElem};
use crate::error::{Error, Result};
use crate::omega_words::{omega_power, omega_star_power, zeta_power};

pub use grouping::{apply_grouping, apply_grouping_at, GroupingSpec};
pub use harness::{
    check_axioms, check_axioms_with, generate_term, shrink, Axiom, AxiomReport, FailureRecord,
    HarnessConfig, Law, LawStats, Schema,
};
pub use identities::{
    canonicalize, insert_identities, rotate, strip_identities, IdentityDirective, RepeatKind, Side,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProductTerm {
    Lit(SElem),
    /// Finite concatenation; `Cat([])` is the empty product.
    Cat(Vec<ProductTerm>),
    OmegaPow(Box<ProductTerm>),
    OmegaStarPow(Box<ProductTerm>),
    ZetaPow(Box<ProductTerm>),
}

impl ProductTerm {
    pub fn lit(x: SElem) -> Self {
        ProductTerm::Lit(x)
    }

    pub fn a() -> Self {
        ProductTerm::Lit(SElem::A)
    }

    pub fn b() -> Self {
        ProductTerm::Lit(SElem::B)
    }

    pub fn e() -> Self {
        ProductTerm::Lit(SElem::E)
    }

    pub fn cat(items: Vec<ProductTerm>) -> Self {
        ProductTerm::Cat(items)
    }

    pub fn omega(t: ProductTerm) -> Self {
        ProductTerm::OmegaPow(Box::new(t))
    }

    pub fn omega_star(t: ProductTerm) -> Self {
        ProductTerm::OmegaStarPow(Box::new(t))
    }

    pub fn zeta(t: ProductTerm) -> Self {
        ProductTerm::ZetaPow(Box::new(t))
    }

    pub fn constructor(&self) -> &'static str {
        match self {
            ProductTerm::Lit(_) => "Lit",
            ProductTerm::Cat(_) => "Cat",
            ProductTerm::OmegaPow(_) => "OmegaPow",
            ProductTerm::OmegaStarPow(_) => "OmegaStarPow",
            ProductTerm::ZetaPow(_) => "ZetaPow",
        }
    }

    pub fn children(&self) -> &[ProductTerm] {
        match self {
            ProductTerm::Lit(_) => &[],
            ProductTerm::Cat(items) => items,
            ProductTerm::OmegaPow(t) | ProductTerm::OmegaStarPow(t) | ProductTerm::ZetaPow(t) => {
                std::slice::from_ref(t)
            }
        }
    }

    fn children_mut(&mut self) -> &mut [ProductTerm] {
        match self {
            ProductTerm::Lit(_) => &mut [],
            ProductTerm::Cat(items) => items,
            ProductTerm::OmegaPow(t) | ProductTerm::OmegaStarPow(t) | ProductTerm::ZetaPow(t) => {
                std::slice::from_mut(t)
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(ProductTerm::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(ProductTerm::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn contains_lit(&self, x: SElem) -> bool {
        match self {
            ProductTerm::Lit(y) => *y == x,
            _ => self.children().iter().any(|c| c.contains_lit(x)),
        }
    }

    /// Paths to every node, in preorder. A path lists child indices from the
    /// root; the body of a repetition is child 0.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        fn go(t: &ProductTerm, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            for (i, c) in t.children().iter().enumerate() {
                cur.push(i);
                go(c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn at(&self, path: &[usize]) -> Option<&ProductTerm> {
        path.iter().try_fold(self, |t, &i| t.children().get(i))
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut ProductTerm> {
        path.iter()
            .try_fold(self, |t, &i| t.children_mut().get_mut(i))
    }

    /// Replaces the node at `path` by `f(node)`.
    pub fn replace_at(
        &self,
        path: &[usize],
        f: impl FnOnce(&ProductTerm) -> Result<ProductTerm>,
    ) -> Result<ProductTerm> {
        let mut out = self.clone();
        let node = out
            .at_mut(path)
            .ok_or_else(|| Error::BadPath(path.to_vec()))?;
        *node = f(node)?;
        Ok(out)
    }
}

/// Value of a product term in `S`.
///
/// `Cat` folds its children; the repetitions use the closed forms for
/// `x^ω`, `x^ω*` and `x^ζ`, which are `e`-like only for balanced `x`:
/// `(b^n a^n)^ω = b^n`, `(b^n a^n)^ω* = a^n`, `(b^n a^n)^ζ = e`, and `Ω` for
/// every unbalanced `x`.
pub fn eval(t: &ProductTerm) -> SElem {
    match t {
        ProductTerm::Lit(x) => *x,
        ProductTerm::Cat(items) => fold(items.iter().map(eval)),
        ProductTerm::OmegaPow(body) => omega_power(eval(body)),
        ProductTerm::OmegaStarPow(body) => omega_star_power(eval(body)),
        ProductTerm::ZetaPow(body) => zeta_power(eval(body)),
    }
}

/// Every node of a term paired with its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalTrace {
    pub term: String,
    pub value: SElem,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<EvalTrace>,
}

pub fn eval_traced(t: &ProductTerm) -> EvalTrace {
    let children: Vec<EvalTrace> = t.children().iter().map(eval_traced).collect();
    let vals = children.iter().map(|c| c.value);
    let value = match t {
        ProductTerm::Lit(x) => *x,
        ProductTerm::Cat(_) => fold(vals),
        ProductTerm::OmegaPow(_) => omega_power(children[0].value),
        ProductTerm::OmegaStarPow(_) => omega_star_power(children[0].value),
        ProductTerm::ZetaPow(_) => zeta_power(children[0].value),
    };
    EvalTrace {
        term: t.to_string(),
        value,
        children,
    }
}

impl EvalTrace {
    /// Indented tree, one node per line: `value  <=  term`.
    pub fn render(&self) -> String {
        fn go(t: &EvalTrace, indent: usize, out: &mut String) {
            out.push_str(&format!("{:indent$}{}  <=  {}\n", "", t.value, t.term));
            for c in &t.children {
                go(c, indent + 2, out);
            }
        }
        let mut out = String::new();
        go(self, 0, &mut out);
        out
    }
}

/// Surface syntax; literals print as their values. `Cat([])` has no surface form and prints as `e`, its
/// value.
impl fmt::Display for ProductTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductTerm::Lit(x) => write!(f, "{x}"),
            ProductTerm::Cat(items) if items.is_empty() => f.write_str("e"),
            ProductTerm::Cat(items) if items.len() == 1 => write!(f, "({})", items[0]),
            ProductTerm::Cat(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    match item {
                        ProductTerm::Cat(inner) if inner.len() > 1 => write!(f, "({item})")?,
                        _ => write!(f, "{item}")?,
                    }
                }
                Ok(())
            }
            ProductTerm::OmegaPow(t) => write!(f, "w({t})"),
            ProductTerm::OmegaStarPow(t) => write!(f, "wrev({t})"),
            ProductTerm::ZetaPow(t) => write!(f, "z({t})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ProductTerm as T;

    #[test]
    fn eval_examples() {
        assert_eq!(eval(&T::omega(T::cat(vec![T::a(), T::b()]))), SElem::E);
        let t = T::cat(vec![
            T::a(),
            T::a(),
            T::zeta(T::cat(vec![T::a(), T::b()])),
            T::b(),
            T::b(),
        ]);
        assert_eq!(eval(&t), SElem::E);
        assert_eq!(eval(&T::omega_star(T::a())), SElem::Absorb);
        assert_eq!(eval(&T::cat(vec![])), SElem::E);
        assert_eq!(
            eval(&T::cat(vec![T::lit(SElem::Normal(3, 2))])),
            SElem::Normal(3, 2)
        );
    }

    #[test]
    fn absorb_propagates() {
        let t = T::cat(vec![
            T::b(),
            T::omega(T::cat(vec![T::a(), T::lit(SElem::Absorb)])),
        ]);
        assert_eq!(eval(&t), SElem::Absorb);
        assert_eq!(eval(&T::zeta(T::lit(SElem::Absorb))), SElem::Absorb);
    }

    #[test]
    fn nested_repeats() {
        // (b a)^ω = b, then b^ω is not regular
        assert_eq!(
            eval(&T::omega(T::omega(T::cat(vec![T::b(), T::a()])))),
            SElem::Absorb
        );
        // ((ab)^ω)^ζ = e^ζ = e
        assert_eq!(
            eval(&T::zeta(T::omega(T::cat(vec![T::a(), T::b()])))),
            SElem::E
        );
        // a · (b a)^ω* · b : (ba)^ω* = a, so a a b = a
        let t = T::cat(vec![
            T::a(),
            T::omega_star(T::cat(vec![T::b(), T::a()])),
            T::b(),
        ]);
        assert_eq!(eval(&t), SElem::A);
    }

    #[test]
    fn trace_matches_eval() {
        let t = T::cat(vec![
            T::lit(SElem::Normal(2, 1)),
            T::omega(T::cat(vec![T::b(), T::a()])),
        ]);
        let tr = eval_traced(&t);
        assert_eq!(tr.value, eval(&t));
        assert_eq!(tr.value, SElem::Normal(2, 0));
        assert_eq!(tr.children.len(), 2);
        assert_eq!(tr.children[1].value, SElem::B);
        let text = tr.render();
        assert!(text.starts_with("b^2  <=  b^2 a * w(b * a)\n"), "{text}");
    }

    #[test]
    fn paths_and_display() {
        let t = T::cat(vec![T::a(), T::zeta(T::cat(vec![T::b(), T::a()]))]);
        assert_eq!(t.paths().len(), 6);
        assert_eq!(t.at(&[1, 0, 1]), Some(&T::a()));
        assert_eq!(t.at(&[3]), None);
        assert_eq!(t.to_string(), "a * z(b * a)");
        assert_eq!(t.size(), 6);
        assert_eq!(t.depth(), 4);
    }
}

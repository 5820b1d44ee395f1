//! Identity insertion and deletion, canonical forms and index rotations.

use serde::Serialize;

use super::ProductTerm;
use crate::bicyclic::SElem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Before,
    After,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RepeatKind {
    Omega,
    OmegaStar,
    Zeta,
}

impl RepeatKind {
    fn wrap(self, t: ProductTerm) -> ProductTerm {
        match self {
            RepeatKind::Omega => ProductTerm::omega(t),
            RepeatKind::OmegaStar => ProductTerm::omega_star(t),
            RepeatKind::Zeta => ProductTerm::zeta(t),
        }
    }
}

/// Where to add occurrences of `e`. Paths that leave the tree stop at the
/// last node reached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityDirective {
    /// Insert one `e` into the `Cat` at `path` before child `index`
    /// (clamped). A non-`Cat` node becomes `e * node` or `node * e`.
    Splice { path: Vec<usize>, index: usize },
    /// `node` becomes `e * ... * e * node * e * ... * e`.
    Wrap {
        path: Vec<usize>,
        before: usize,
        after: usize,
    },
    /// `node` becomes `node * e^κ` (or `e^κ * node`) for a repetition `κ`.
    Repeat {
        path: Vec<usize>,
        kind: RepeatKind,
        side: Side,
    },
}

impl IdentityDirective {
    pub fn front() -> Self {
        IdentityDirective::Splice {
            path: Vec::new(),
            index: 0,
        }
    }

    fn path(&self) -> &[usize] {
        match self {
            IdentityDirective::Splice { path, .. }
            | IdentityDirective::Wrap { path, .. }
            | IdentityDirective::Repeat { path, .. } => path,
        }
    }
}

fn resolve(t: &ProductTerm, path: &[usize]) -> Vec<usize> {
    let mut cur = t;
    let mut out = Vec::new();
    for &i in path {
        match cur.children().get(i) {
            Some(c) => {
                cur = c;
                out.push(i);
            }
            None => break,
        }
    }
    out
}

/// Adds identities per the directive; the value never changes.
pub fn insert_identities(t: &ProductTerm, d: &IdentityDirective) -> ProductTerm {
    let path = resolve(t, d.path());
    let e = ProductTerm::e;
    t.replace_at(&path, |node| {
        Ok(match d {
            IdentityDirective::Splice { index, .. } => match node {
                ProductTerm::Cat(items) => {
                    let mut items = items.clone();
                    items.insert((*index).min(items.len()), e());
                    ProductTerm::Cat(items)
                }
                _ if *index == 0 => ProductTerm::Cat(vec![e(), node.clone()]),
                _ => ProductTerm::Cat(vec![node.clone(), e()]),
            },
            IdentityDirective::Wrap { before, after, .. } => {
                let mut items = vec![e(); *before];
                items.push(node.clone());
                items.extend(std::iter::repeat_with(e).take(*after));
                ProductTerm::Cat(items)
            }
            IdentityDirective::Repeat { kind, side, .. } => {
                let rep = kind.wrap(e());
                match side {
                    Side::Before => ProductTerm::Cat(vec![rep, node.clone()]),
                    Side::After => ProductTerm::Cat(vec![node.clone(), rep]),
                }
            }
        })
    })
    .expect("resolved paths exist")
}

/// Deletes every `e` leaf, together with any node whose index set becomes
/// empty. A term with nothing left is `Cat([])`.
pub fn strip_identities(t: &ProductTerm) -> ProductTerm {
    fn go(t: &ProductTerm) -> Option<ProductTerm> {
        match t {
            ProductTerm::Lit(x) if *x == SElem::E => None,
            ProductTerm::Lit(_) => Some(t.clone()),
            ProductTerm::Cat(items) => {
                let kept: Vec<_> = items.iter().filter_map(go).collect();
                (!kept.is_empty()).then_some(ProductTerm::Cat(kept))
            }
            ProductTerm::OmegaPow(body) => go(body).map(ProductTerm::omega),
            ProductTerm::OmegaStarPow(body) => go(body).map(ProductTerm::omega_star),
            ProductTerm::ZetaPow(body) => go(body).map(ProductTerm::zeta),
        }
    }
    go(t).unwrap_or(ProductTerm::Cat(Vec::new()))
}

/// Canonical representative up to reindexing: nested `Cat`s are flattened,
/// singleton `Cat`s unwrapped, and repetitions of an empty family dropped.
pub fn canonicalize(t: &ProductTerm) -> ProductTerm {
    let empty = |t: &ProductTerm| matches!(t, ProductTerm::Cat(v) if v.is_empty());
    match t {
        ProductTerm::Lit(_) => t.clone(),
        ProductTerm::Cat(items) => {
            let mut flat = Vec::with_capacity(items.len());
            for c in items.iter().map(canonicalize) {
                match c {
                    ProductTerm::Cat(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                ProductTerm::Cat(flat)
            }
        }
        ProductTerm::OmegaPow(body)
        | ProductTerm::OmegaStarPow(body)
        | ProductTerm::ZetaPow(body) => {
            let body = canonicalize(body);
            if empty(&body) {
                return body;
            }
            match t {
                ProductTerm::OmegaPow(_) => ProductTerm::omega(body),
                ProductTerm::OmegaStarPow(_) => ProductTerm::omega_star(body),
                _ => ProductTerm::zeta(body),
            }
        }
    }
}

fn items_of(body: &ProductTerm) -> Vec<ProductTerm> {
    match body {
        ProductTerm::Cat(items) => items.clone(),
        other => vec![other.clone()],
    }
}

/// Re-reads a repetition with its period shifted by one factor:
/// `(x y..)^ω = x (y.. x)^ω`, `(..y x)^ω* = (x ..y)^ω* x` and
/// `(x y..)^ζ = (y.. x)^ζ`. Each side indexes the same sequence.
pub fn rotate(t: &ProductTerm) -> Result<ProductTerm> {
    let mismatch = || Error::GroupingMismatch {
        grouping: "rotate",
        constructor: t.constructor(),
    };
    match t {
        ProductTerm::OmegaPow(body) => {
            let mut items = items_of(body);
            if items.is_empty() {
                return Ok(t.clone());
            }
            let first = items.remove(0);
            items.push(first.clone());
            Ok(ProductTerm::Cat(vec![
                first,
                ProductTerm::omega(ProductTerm::Cat(items)),
            ]))
        }
        ProductTerm::OmegaStarPow(body) => {
            let mut items = items_of(body);
            let Some(last) = items.pop() else {
                return Ok(t.clone());
            };
            items.insert(0, last.clone());
            Ok(ProductTerm::Cat(vec![
                ProductTerm::omega_star(ProductTerm::Cat(items)),
                last,
            ]))
        }
        ProductTerm::ZetaPow(body) => {
            let mut items = items_of(body);
            if !items.is_empty() {
                items.rotate_left(1);
            }
            Ok(ProductTerm::zeta(ProductTerm::Cat(items)))
        }
        _ => Err(mismatch()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfinite::eval;
    use ProductTerm as T;

    #[test]
    fn insertion_examples() {
        let ab = T::cat(vec![T::a(), T::b()]);
        assert_eq!(
            insert_identities(&ab, &IdentityDirective::front()),
            T::cat(vec![T::e(), T::a(), T::b()])
        );
        let wrapped = insert_identities(
            &T::b(),
            &IdentityDirective::Wrap {
                path: vec![],
                before: 0,
                after: 2,
            },
        );
        assert_eq!(wrapped, T::cat(vec![T::b(), T::e(), T::e()]));
        assert_eq!(eval(&wrapped), SElem::B);
        assert_eq!(eval(&T::omega(T::e())), SElem::E);
        for kind in [RepeatKind::Omega, RepeatKind::OmegaStar, RepeatKind::Zeta] {
            let t = insert_identities(
                &ab,
                &IdentityDirective::Repeat {
                    path: vec![1],
                    kind,
                    side: Side::Before,
                },
            );
            assert_eq!(eval(&t), SElem::E);
        }
    }

    #[test]
    fn lenient_paths() {
        let t = T::cat(vec![T::a(), T::b()]);
        let d = IdentityDirective::Splice {
            path: vec![5, 2],
            index: 9,
        };
        assert_eq!(
            insert_identities(&t, &d),
            T::cat(vec![T::a(), T::b(), T::e()])
        );
    }

    #[test]
    fn stripping() {
        let t = T::cat(vec![T::e(), T::omega(T::e()), T::a(), T::cat(vec![T::e()])]);
        assert_eq!(strip_identities(&t), T::cat(vec![T::a()]));
        assert_eq!(strip_identities(&T::e()), T::cat(vec![]));
        assert_eq!(eval(&strip_identities(&T::zeta(T::e()))), SElem::E);
    }

    #[test]
    fn canonical_forms() {
        let t = T::cat(vec![
            T::cat(vec![T::a(), T::cat(vec![T::b()])]),
            T::omega(T::cat(vec![T::a()])),
        ]);
        assert_eq!(
            canonicalize(&t),
            T::cat(vec![T::a(), T::b(), T::omega(T::a())])
        );
        assert_eq!(canonicalize(&T::zeta(T::cat(vec![]))), T::cat(vec![]));
        assert_eq!(canonicalize(&T::cat(vec![T::cat(vec![T::b()])])), T::b());
    }

    #[test]
    fn rotations_preserve_value() {
        let ba = T::cat(vec![T::b(), T::a()]);
        for t in [
            T::omega(ba.clone()),
            T::omega_star(ba.clone()),
            T::zeta(ba.clone()),
        ] {
            assert_eq!(eval(&rotate(&t).unwrap()), eval(&t), "{t}");
        }
        // (ba)^ζ read from the other phase is (ab)^ζ
        assert_eq!(
            rotate(&T::zeta(ba)).unwrap(),
            T::zeta(T::cat(vec![T::a(), T::b()]))
        );
        assert!(rotate(&T::a()).is_err());
    }
}

use std::fmt;

use serde::Serialize;

use super::ProductTerm;
use crate::error::{Error, Result};

/// A regrouping of a node's index order into consecutive convex fibers,
/// i.e. a concrete order-preserving surjection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupingSpec {
    /// Nests a `Cat` into sub-`Cat`s of the given consecutive sizes.
    CatBlocks(Vec<usize>),
    /// Groups `k` consecutive copies of an `ω` (or `ω*`) repetition.
    OmegaChunk(usize),
    /// Peels `j` copies off the open end: `t^ω = t^j · t^ω` and
    /// `t^ω* = t^ω* · t^j`.
    OmegaPeel(usize),
    /// Cuts a `ζ` repetition into its `ω*` and `ω` halves.
    ZetaSplit,
}

impl GroupingSpec {
    pub fn name(&self) -> &'static str {
        match self {
            GroupingSpec::CatBlocks(_) => "CatBlocks",
            GroupingSpec::OmegaChunk(_) => "OmegaChunk",
            GroupingSpec::OmegaPeel(_) => "OmegaPeel",
            GroupingSpec::ZetaSplit => "ZetaSplit",
        }
    }
}

impl fmt::Display for GroupingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupingSpec::CatBlocks(sizes) => write!(f, "CatBlocks({sizes:?})"),
            GroupingSpec::OmegaChunk(k) => write!(f, "OmegaChunk({k})"),
            GroupingSpec::OmegaPeel(j) => write!(f, "OmegaPeel({j})"),
            GroupingSpec::ZetaSplit => f.write_str("ZetaSplit"),
        }
    }
}

/// Applies a regrouping to the root of `t`.
pub fn apply_grouping(t: &ProductTerm, g: &GroupingSpec) -> Result<ProductTerm> {
    let mismatch = || Error::GroupingMismatch {
        grouping: g.name(),
        constructor: t.constructor(),
    };
    match (g, t) {
        (GroupingSpec::CatBlocks(sizes), ProductTerm::Cat(items)) => {
            if sizes.contains(&0) {
                return Err(Error::InvalidSizes(format!(
                    "zero-sized block in {sizes:?}"
                )));
            }
            let total: usize = sizes.iter().sum();
            if total != items.len() {
                return Err(Error::InvalidSizes(format!(
                    "sizes {sizes:?} sum to {total}, the Cat has arity {}",
                    items.len()
                )));
            }
            let mut rest = items.as_slice();
            let mut groups = Vec::with_capacity(sizes.len());
            for &s in sizes {
                let (head, tail) = rest.split_at(s);
                groups.push(ProductTerm::Cat(head.to_vec()));
                rest = tail;
            }
            Ok(ProductTerm::Cat(groups))
        }
        (GroupingSpec::OmegaChunk(0), _) => {
            Err(Error::InvalidSizes("chunk size must be at least 1".into()))
        }
        (GroupingSpec::OmegaChunk(k), ProductTerm::OmegaPow(body)) => {
            Ok(ProductTerm::omega(ProductTerm::Cat(vec![
                (**body).clone();
                *k
            ])))
        }
        (GroupingSpec::OmegaChunk(k), ProductTerm::OmegaStarPow(body)) => {
            Ok(ProductTerm::omega_star(ProductTerm::Cat(vec![
                (**body)
                    .clone();
                *k
            ])))
        }
        (GroupingSpec::OmegaPeel(j), ProductTerm::OmegaPow(body)) => {
            let mut items = vec![(**body).clone(); *j];
            items.push(t.clone());
            Ok(ProductTerm::Cat(items))
        }
        (GroupingSpec::OmegaPeel(j), ProductTerm::OmegaStarPow(body)) => {
            let mut items = vec![t.clone()];
            items.extend(std::iter::repeat_n((**body).clone(), *j));
            Ok(ProductTerm::Cat(items))
        }
        (GroupingSpec::ZetaSplit, ProductTerm::ZetaPow(body)) => Ok(ProductTerm::Cat(vec![
            ProductTerm::omega_star((**body).clone()),
            ProductTerm::omega((**body).clone()),
        ])),
        _ => Err(mismatch()),
    }
}

/// Applies a regrouping to the node at `path`.
pub fn apply_grouping_at(t: &ProductTerm, path: &[usize], g: &GroupingSpec) -> Result<ProductTerm> {
    t.replace_at(path, |node| apply_grouping(node, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicyclic::SElem;
    use crate::transfinite::eval;
    use ProductTerm as T;

    fn ba() -> T {
        T::lit(SElem::Normal(1, 1))
    }

    #[test]
    fn rewrite_examples() {
        assert_eq!(
            apply_grouping(&T::omega(ba()), &GroupingSpec::OmegaChunk(2)).unwrap(),
            T::omega(T::cat(vec![ba(), ba()]))
        );
        assert_eq!(
            apply_grouping(&T::zeta(ba()), &GroupingSpec::ZetaSplit).unwrap(),
            T::cat(vec![T::omega_star(ba()), T::omega(ba())])
        );
        let four = T::cat(vec![T::a(), T::b(), T::e(), T::a()]);
        assert_eq!(
            apply_grouping(&four, &GroupingSpec::CatBlocks(vec![2, 2])).unwrap(),
            T::cat(vec![
                T::cat(vec![T::a(), T::b()]),
                T::cat(vec![T::e(), T::a()])
            ])
        );
    }

    #[test]
    fn peel_fixture() {
        let t = T::omega(ba());
        let peeled = apply_grouping(&t, &GroupingSpec::OmegaPeel(1)).unwrap();
        assert_eq!(peeled, T::cat(vec![ba(), T::omega(ba())]));
        assert_eq!(eval(&t), SElem::B);
        assert_eq!(eval(&peeled), SElem::Normal(1, 1) * SElem::Normal(1, 0));
        assert_eq!(eval(&peeled), SElem::B);

        let s = T::omega_star(ba());
        let peeled = apply_grouping(&s, &GroupingSpec::OmegaPeel(2)).unwrap();
        assert_eq!(peeled, T::cat(vec![T::omega_star(ba()), ba(), ba()]));
        assert_eq!(eval(&s), eval(&peeled));
    }

    #[test]
    fn errors() {
        let four = T::cat(vec![T::a(); 4]);
        assert!(matches!(
            apply_grouping(&four, &GroupingSpec::CatBlocks(vec![2, 1])),
            Err(Error::InvalidSizes(_))
        ));
        assert!(matches!(
            apply_grouping(&four, &GroupingSpec::CatBlocks(vec![0, 4])),
            Err(Error::InvalidSizes(_))
        ));
        assert_eq!(
            apply_grouping(&four, &GroupingSpec::ZetaSplit),
            Err(Error::GroupingMismatch {
                grouping: "ZetaSplit",
                constructor: "Cat"
            })
        );
        assert!(apply_grouping(&T::omega(T::a()), &GroupingSpec::OmegaChunk(0)).is_err());
        assert!(matches!(
            apply_grouping_at(&four, &[7], &GroupingSpec::ZetaSplit),
            Err(Error::BadPath(_))
        ));
    }

    #[test]
    fn grouping_at_path() {
        let t = T::cat(vec![T::a(), T::zeta(T::b())]);
        let g = apply_grouping_at(&t, &[1], &GroupingSpec::ZetaSplit).unwrap();
        assert_eq!(
            g,
            T::cat(vec![
                T::a(),
                T::cat(vec![T::omega_star(T::b()), T::omega(T::b())])
            ])
        );
    }
}

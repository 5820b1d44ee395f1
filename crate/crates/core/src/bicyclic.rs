//! The carrier `S = { b^n a^m : n, m >= 0 } ∪ { Ω }` and its finite product.
//!
//! Every element other than `Ω` is stored as its normal form `b^n a^m`, so
//! the identity is `Normal(0, 0)` and equality is structural. Multiplication
//! is the closed form of deleting `ab` pairs from `b^n1 a^m1 b^n2 a^m2`: the
//! middle `a^m1 b^n2` cancels `min(m1, n2)` pairs and the excess spills to
//! whichever side it belongs.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An element of the infinitary semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SElem {
    /// `b^n a^m`: `n` leading b's followed by `m` trailing a's.
    Normal(u64, u64),
    /// The absorbing element `Ω`, the value of every non-regular product.
    Absorb,
}

impl SElem {
    /// `e = b^0 a^0`.
    pub const E: SElem = SElem::Normal(0, 0);
    /// The letter `a`.
    pub const A: SElem = SElem::Normal(0, 1);
    /// The letter `b`.
    pub const B: SElem = SElem::Normal(1, 0);
    pub const OMEGA: SElem = SElem::Absorb;

    pub fn is_identity(self) -> bool {
        self == SElem::E
    }

    pub fn is_absorb(self) -> bool {
        self == SElem::Absorb
    }

    /// The `(n, m)` counters, or `None` for `Ω`.
    pub fn counters(self) -> Option<(u64, u64)> {
        match self {
            SElem::Normal(n, m) => Some((n, m)),
            SElem::Absorb => None,
        }
    }

    /// Binary product. Total; `Ω` absorbs on either side.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: SElem) -> SElem {
        match (self, rhs) {
            (SElem::Normal(n1, m1), SElem::Normal(n2, m2)) => {
                let n = n1
                    .checked_add(n2.saturating_sub(m1))
                    .expect("b-count overflow in S");
                let m = m2
                    .checked_add(m1.saturating_sub(n2))
                    .expect("a-count overflow in S");
                SElem::Normal(n, m)
            }
            _ => SElem::Absorb,
        }
    }

    /// Exchanges the roles of the two letters under order reversal:
    /// `b^n a^m` reversed is `a^m b^n`, which after swapping letters reads
    /// `b^m a^n`. Multiplication is an anti-automorphism for this map.
    pub fn mirror(self) -> SElem {
        match self {
            SElem::Normal(n, m) => SElem::Normal(m, n),
            SElem::Absorb => SElem::Absorb,
        }
    }
}

impl Default for SElem {
    fn default() -> Self {
        SElem::E
    }
}

impl std::ops::Mul for SElem {
    type Output = SElem;

    fn mul(self, rhs: SElem) -> SElem {
        SElem::mul(self, rhs)
    }
}

/// Left fold of [`SElem::mul`] from `e`; the empty product is `e`.
pub fn fold<I>(xs: I) -> SElem
where
    I: IntoIterator<Item = SElem>,
{
    xs.into_iter().fold(SElem::E, SElem::mul)
}

impl std::iter::Product for SElem {
    fn product<I: Iterator<Item = SElem>>(iter: I) -> SElem {
        fold(iter)
    }
}

/// Prints `e`, `O`, or `b^n a^m` with zero powers omitted and unit powers
/// written as a bare letter (`b a`, `b^2`, `a^3`).
impl fmt::Display for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn power(f: &mut fmt::Formatter<'_>, letter: char, k: u64) -> fmt::Result {
            if k == 1 {
                write!(f, "{letter}")
            } else {
                write!(f, "{letter}^{k}")
            }
        }
        match *self {
            SElem::Absorb => f.write_str("O"),
            SElem::Normal(0, 0) => f.write_str("e"),
            SElem::Normal(n, 0) => power(f, 'b', n),
            SElem::Normal(0, m) => power(f, 'a', m),
            SElem::Normal(n, m) => {
                power(f, 'b', n)?;
                f.write_str(" ")?;
                power(f, 'a', m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: spell out `b^n a^m` products as strings and
    /// delete adjacent `ab` until none remain.
    fn delete_ab(xs: &[SElem]) -> SElem {
        let mut s = String::new();
        for x in xs {
            let (n, m) = x.counters().unwrap();
            s.push_str(&"b".repeat(n as usize));
            s.push_str(&"a".repeat(m as usize));
        }
        while let Some(i) = s.find("ab") {
            s.replace_range(i..i + 2, "");
        }
        let n = s.chars().take_while(|&c| c == 'b').count();
        let m = s.len() - n;
        assert!(s[n..].chars().all(|c| c == 'a'));
        SElem::Normal(n as u64, m as u64)
    }

    fn bounded() -> Vec<SElem> {
        let mut v = vec![SElem::Absorb];
        for n in 0..=5 {
            for m in 0..=5 {
                v.push(SElem::Normal(n, m));
            }
        }
        v
    }

    #[test]
    fn mul_examples() {
        assert_eq!(SElem::A * SElem::B, SElem::E);
        assert_eq!(SElem::B * SElem::A, SElem::Normal(1, 1));
        assert_ne!(SElem::B * SElem::A, SElem::E);
        assert_eq!(
            delete_ab(&[SElem::Normal(2, 3), SElem::Normal(1, 2)]),
            SElem::Normal(2, 4)
        );
        assert_eq!(
            SElem::Normal(2, 3) * SElem::Normal(1, 2),
            SElem::Normal(2, 4)
        );
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold([]), SElem::E);
        let aabb = [SElem::A, SElem::A, SElem::B, SElem::B];
        assert_eq!(delete_ab(&aabb), SElem::E);
        assert_eq!(fold(aabb), SElem::E);
        assert_eq!(fold([SElem::B, SElem::Absorb, SElem::A]), SElem::Absorb);
    }

    #[test]
    fn associativity_bounded() {
        let xs = bounded();
        for &x in &xs {
            for &y in &xs {
                for &z in &xs {
                    assert_eq!((x * y) * z, x * (y * z), "{x} {y} {z}");
                }
            }
        }
    }

    #[test]
    fn identity_and_one_sided_inverse() {
        for x in bounded() {
            assert_eq!(SElem::E * x, x);
            assert_eq!(x * SElem::E, x);
        }
        for n in 0..=8 {
            for m in 0..=8 {
                assert_ne!(SElem::Normal(n, m) * SElem::A, SElem::E);
            }
        }
    }

    #[test]
    fn closed_form_matches_deletion_pairs() {
        let normals: Vec<_> = bounded().into_iter().filter(|x| !x.is_absorb()).collect();
        for &x in &normals {
            for &y in &normals {
                assert_eq!(x * y, delete_ab(&[x, y]));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(SElem::E.to_string(), "e");
        assert_eq!(SElem::Absorb.to_string(), "O");
        assert_eq!(SElem::Normal(1, 1).to_string(), "b a");
        assert_eq!(SElem::Normal(2, 0).to_string(), "b^2");
        assert_eq!(SElem::Normal(0, 3).to_string(), "a^3");
        assert_eq!(SElem::Normal(2, 1).to_string(), "b^2 a");
    }

    fn elem() -> impl Strategy<Value = SElem> {
        prop_oneof![
            1 => Just(SElem::Absorb),
            12 => (0u64..6, 0u64..6).prop_map(|(n, m)| SElem::Normal(n, m)),
        ]
    }

    proptest! {
        #[test]
        fn fold_split(xs in prop::collection::vec(elem(), 0..10), k in 0usize..10) {
            let k = k.min(xs.len());
            prop_assert_eq!(fold(xs.clone()), fold(xs[..k].to_vec()) * fold(xs[k..].to_vec()));
        }

        #[test]
        fn mirror_reverses_products(x in elem(), y in elem()) {
            prop_assert_eq!((x * y).mirror(), y.mirror() * x.mirror());
        }
    }
}

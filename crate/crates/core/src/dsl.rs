//! Surface syntax for product terms.
//!
//! ```text
//! expr := seq
//! seq  := item { "*" item }
//! item := "a" | "b" | "e" | "O" | "b^" nat [ "a^" nat ] | "a^" nat
//!       | "w(" expr ")" | "wrev(" expr ")" | "z(" expr ")" | "(" expr ")"
//! ```
//!
//! Whitespace is ignored between tokens. A `b` or `b^n` may also be directly
//! followed by `a` or `a^m`, so printed values such as `b^2 a` read back.

use std::fmt;

use crate::bicyclic::SElem;
use crate::error::{Error, Result};
use crate::finite_words::Letter;
use crate::transfinite::ProductTerm;

/// Nesting bound for parentheses and repetitions.
pub const MAX_NESTING: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Letter(Letter),
    Identity,
    Absorb,
    /// `b^b a^a` written with at least one exponent or juxtaposition.
    Power {
        b: u32,
        a: u32,
    },
    /// Two or more factors.
    Seq(Vec<Expr>),
    Omega(Box<Expr>),
    OmegaStar(Box<Expr>),
    Zeta(Box<Expr>),
}

impl Expr {
    pub fn lower(&self) -> ProductTerm {
        match self {
            Expr::Letter(l) => ProductTerm::Lit(l.as_elem()),
            Expr::Identity => ProductTerm::e(),
            Expr::Absorb => ProductTerm::Lit(SElem::Absorb),
            Expr::Power { b, a } => ProductTerm::Lit(SElem::Normal(u64::from(*b), u64::from(*a))),
            Expr::Seq(items) => ProductTerm::Cat(items.iter().map(Expr::lower).collect()),
            Expr::Omega(x) => ProductTerm::omega(x.lower()),
            Expr::OmegaStar(x) => ProductTerm::omega_star(x.lower()),
            Expr::Zeta(x) => ProductTerm::zeta(x.lower()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Letter(l) => write!(f, "{}", l.as_char()),
            Expr::Identity => f.write_str("e"),
            Expr::Absorb => f.write_str("O"),
            Expr::Power { b, a } => match (b, a) {
                (b, 0) => write!(f, "b^{b}"),
                (0, a) => write!(f, "a^{a}"),
                (b, a) => write!(f, "b^{b} a^{a}"),
            },
            Expr::Seq(items) => {
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    if matches!(x, Expr::Seq(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Expr::Omega(x) => write!(f, "w({x})"),
            Expr::OmegaStar(x) => write!(f, "wrev({x})"),
            Expr::Zeta(x) => write!(f, "z({x})"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        nesting: 0,
    };
    let e = p.seq()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected("'*' or end of input"));
    }
    Ok(e)
}

/// Parses and lowers in one step.
pub fn parse_term(src: &str) -> Result<ProductTerm> {
    parse(src).map(|e| e.lower())
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    nesting: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos,
            message: message.into(),
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        let pos = self.pos;
        match std::str::from_utf8(&self.src[pos..])
            .ok()
            .and_then(|s| s.chars().next())
        {
            Some(c) => self.syntax(pos, format!("expected {wanted}, found {c:?}")),
            None if pos < self.src.len() => {
                self.syntax(pos, format!("expected {wanted}, found invalid text"))
            }
            None => self.syntax(pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("{:?}", c as char)))
        }
    }

    fn seq(&mut self) -> Result<Expr> {
        let mut items = vec![self.item()?];
        while self.eat(b'*') {
            items.push(self.item()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Seq(items)
        })
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits
            .parse()
            .map_err(|_| Error::NatOverflow { pos: start })
    }

    /// Optional `^ nat` after a letter; `None` when absent.
    fn exponent(&mut self) -> Result<Option<u32>> {
        if self.eat(b'^') {
            self.nat().map(Some)
        } else {
            Ok(None)
        }
    }

    fn nested(&mut self, open_at: usize, wrap: fn(Box<Expr>) -> Expr) -> Result<Expr> {
        if self.nesting >= MAX_NESTING {
            return Err(self.syntax(open_at, format!("nesting deeper than {MAX_NESTING}")));
        }
        self.nesting += 1;
        let inner = self.seq()?;
        self.nesting -= 1;
        self.expect(b')')?;
        Ok(wrap(Box::new(inner)))
    }

    fn keyword(&mut self, word: &[u8]) -> bool {
        if self.src[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn item(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                Ok(match self.exponent()? {
                    Some(m) => Expr::Power { b: 0, a: m },
                    None => Expr::Letter(Letter::A),
                })
            }
            Some(b'b') => {
                self.pos += 1;
                let n = self.exponent()?;
                if self.peek() == Some(b'a') {
                    self.pos += 1;
                    let m = self.exponent()?.unwrap_or(1);
                    return Ok(Expr::Power {
                        b: n.unwrap_or(1),
                        a: m,
                    });
                }
                Ok(match n {
                    Some(n) => Expr::Power { b: n, a: 0 },
                    None => Expr::Letter(Letter::B),
                })
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(Expr::Identity)
            }
            Some(b'O') => {
                self.pos += 1;
                Ok(Expr::Absorb)
            }
            Some(b'(') => {
                let at = self.pos;
                self.pos += 1;
                self.nesting += 1;
                if self.nesting > MAX_NESTING {
                    return Err(self.syntax(at, format!("nesting deeper than {MAX_NESTING}")));
                }
                let inner = self.seq()?;
                self.nesting -= 1;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'w') | Some(b'z') => {
                let at = self.pos;
                let wrap: fn(Box<Expr>) -> Expr = if self.keyword(b"wrev") {
                    Expr::OmegaStar
                } else if self.keyword(b"w") {
                    Expr::Omega
                } else {
                    self.pos += 1;
                    Expr::Zeta
                };
                self.expect(b'(')?;
                self.nested(at, wrap)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use ProductTerm as T;

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_term("a*b").unwrap(), T::cat(vec![T::a(), T::b()]));
        assert_eq!(
            parse_term("w(a*b)").unwrap(),
            T::omega(T::cat(vec![T::a(), T::b()]))
        );
        assert_eq!(
            parse_term("b^2 a^3 * z(b*a)").unwrap(),
            T::cat(vec![
                T::lit(SElem::Normal(2, 3)),
                T::zeta(T::cat(vec![T::b(), T::a()]))
            ])
        );
        assert_eq!(parse_term(" wrev ( a ) ").unwrap(), T::omega_star(T::a()));
        assert_eq!(parse_term("(e)").unwrap(), T::e());
        assert_eq!(
            parse_term("O*a").unwrap(),
            T::cat(vec![T::lit(SElem::Absorb), T::a()])
        );
    }

    #[test]
    fn printed_values_read_back() {
        for (src, v) in [
            ("b a", SElem::Normal(1, 1)),
            ("b^2 a", SElem::Normal(2, 1)),
            ("b a^3", SElem::Normal(1, 3)),
        ] {
            assert_eq!(parse_term(src).unwrap(), T::lit(v));
            assert_eq!(v.to_string(), src);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("a * c"),
            Err(Error::Syntax {
                pos: 4,
                message: "expected a term, found 'c'".into()
            })
        );
        assert!(matches!(parse("w(a"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("a b"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse("b^"), Err(Error::Syntax { pos: 2, .. })));
        assert_eq!(parse("a^99999999999"), Err(Error::NatOverflow { pos: 2 }));
        assert!(matches!(parse("wr(a)"), Err(Error::Syntax { pos: 1, .. })));
        assert!(parse(&format!("{}a{}", "(".repeat(300), ")".repeat(300))).is_err());
        assert!(parse("é").is_err());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            Just(Expr::Letter(Letter::A)),
            Just(Expr::Letter(Letter::B)),
            Just(Expr::Identity),
            Just(Expr::Absorb),
            (0u32..5, 0u32..5).prop_map(|(b, a)| Expr::Power { b, a }),
        ];
        leaf.prop_recursive(4, 32, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Seq),
                inner.clone().prop_map(|x| Expr::Omega(Box::new(x))),
                inner.clone().prop_map(|x| Expr::OmegaStar(Box::new(x))),
                inner.prop_map(|x| Expr::Zeta(Box::new(x))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(x in arb_expr()) {
            prop_assert_eq!(parse(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn term_display_reparses_to_same_value(x in arb_expr()) {
            let t = x.lower();
            let back = parse_term(&t.to_string()).unwrap();
            prop_assert_eq!(crate::transfinite::eval(&back), crate::transfinite::eval(&t));
        }
    }
}

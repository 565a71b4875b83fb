//! The ring/group expression language.
//!
//! ```text
//! ring  := post ("x" post)*            left-associative
//! post  := ratom ("[" group "]")*      group rings bind tighter than products
//! ratom := "Z" INT | "(" ring ")"
//! group := gatom ("x" gatom)*
//! gatom := "C" INT | "D" INT | "Q8" | "S" INT | "(" group ")"
//! ```
//!
//! Whitespace is insignificant. Parentheses are only printed where a
//! right-nested product or a product coefficient ring needs them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingExpr {
    ZMod(u64),
    Product(Box<RingExpr>, Box<RingExpr>),
    GroupRing(Box<RingExpr>, GroupExpr),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupExpr {
    Cyclic(u64),
    /// Dihedral group of order 2n.
    Dihedral(u64),
    Quaternion8,
    Symmetric(u64),
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}

impl GroupExpr {
    /// Order of the described group, saturating on overflow.
    pub fn order(&self) -> usize {
        match self {
            GroupExpr::Cyclic(n) => *n as usize,
            GroupExpr::Dihedral(n) => (*n as usize).saturating_mul(2),
            GroupExpr::Quaternion8 => 8,
            GroupExpr::Symmetric(n) => (1..=*n as usize).product(),
            GroupExpr::Product(a, b) => a.order().saturating_mul(b.order()),
        }
    }
}

impl RingExpr {
    /// Number of elements of the described ring, saturating on overflow.
    pub fn size(&self) -> usize {
        match self {
            RingExpr::ZMod(n) => *n as usize,
            RingExpr::Product(a, b) => a.size().saturating_mul(b.size()),
            RingExpr::GroupRing(a, g) => {
                let base = a.size();
                (0..g.order()).fold(1usize, |acc, _| acc.saturating_mul(base))
            }
        }
    }

    pub fn group_ring(base: RingExpr, group: GroupExpr) -> Self {
        RingExpr::GroupRing(Box::new(base), group)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Z,
    C,
    D,
    Q,
    S,
    Times,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Int(u64),
    End,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Z => "\"Z\"".into(),
            Tok::C => "\"C\"".into(),
            Tok::D => "\"D\"".into(),
            Tok::Q => "\"Q\"".into(),
            Tok::S => "\"S\"".into(),
            Tok::Times => "\"x\"".into(),
            Tok::LBracket => "\"[\"".into(),
            Tok::RBracket => "\"]\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'Z' => Tok::Z,
            b'C' => Tok::C,
            b'D' => Tok::D,
            b'Q' => Tok::Q,
            b'S' => Tok::S,
            b'x' => Tok::Times,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u64>().map_err(|_| ParseError {
                    offset: start,
                    message: "integer too large".into(),
                    expected: vec![],
                })?;
                out.push((Tok::Int(n), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character {ch:?}"),
                    expected: vec![],
                });
            }
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos];
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: format!("unexpected {}", self.peek().describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn ring(&mut self) -> Result<RingExpr, ParseError> {
        let mut lhs = self.ring_postfix()?;
        while self.peek() == Tok::Times {
            self.bump();
            let rhs = self.ring_postfix()?;
            lhs = RingExpr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn ring_postfix(&mut self) -> Result<RingExpr, ParseError> {
        let mut base = self.ring_atom()?;
        while self.peek() == Tok::LBracket {
            self.bump();
            let g = self.group()?;
            self.expect(Tok::RBracket)?;
            base = RingExpr::GroupRing(Box::new(base), g);
        }
        Ok(base)
    }

    fn ring_atom(&mut self) -> Result<RingExpr, ParseError> {
        match self.peek() {
            Tok::Z => {
                let (_, at) = self.bump();
                let n = self.int()?;
                if n < 2 {
                    return Err(ParseError {
                        offset: at,
                        message: "modulus must be ≥ 2".into(),
                        expected: vec![],
                    });
                }
                Ok(RingExpr::ZMod(n))
            }
            Tok::LParen => {
                self.bump();
                let r = self.ring()?;
                self.expect(Tok::RParen)?;
                Ok(r)
            }
            _ => Err(self.unexpected(&["\"Z\"", "\"(\""])),
        }
    }

    fn group(&mut self) -> Result<GroupExpr, ParseError> {
        let mut lhs = self.group_atom()?;
        while self.peek() == Tok::Times {
            self.bump();
            let rhs = self.group_atom()?;
            lhs = GroupExpr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn group_atom(&mut self) -> Result<GroupExpr, ParseError> {
        let at = self.offset();
        let bounded = |n: u64, ok: bool, msg: &str| {
            if ok {
                Ok(n)
            } else {
                Err(ParseError {
                    offset: at,
                    message: msg.to_string(),
                    expected: vec![],
                })
            }
        };
        match self.peek() {
            Tok::C => {
                self.bump();
                let n = self.int()?;
                Ok(GroupExpr::Cyclic(bounded(n, n >= 1, "cyclic order must be ≥ 1")?))
            }
            Tok::D => {
                self.bump();
                let n = self.int()?;
                Ok(GroupExpr::Dihedral(bounded(n, n >= 2, "dihedral index must be ≥ 2")?))
            }
            Tok::S => {
                self.bump();
                let n = self.int()?;
                Ok(GroupExpr::Symmetric(bounded(
                    n,
                    (1..=4).contains(&n),
                    "symmetric degree must be between 1 and 4",
                )?))
            }
            Tok::Q => {
                self.bump();
                let n = self.int()?;
                bounded(n, n == 8, "only Q8 is supported")?;
                Ok(GroupExpr::Quaternion8)
            }
            Tok::LParen => {
                self.bump();
                let g = self.group()?;
                self.expect(Tok::RParen)?;
                Ok(g)
            }
            _ => Err(self.unexpected(&["\"C\"", "\"D\"", "\"Q8\"", "\"S\"", "\"(\""])),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected(&["\"x\"", "\"[\"", "end of input"]))
        }
    }
}

/// Parses a ring expression such as `Z4[C2 x C2]`.
pub fn parse_expr(text: &str) -> Result<RingExpr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

/// Parses a bare group expression such as `C2 x S3`.
pub fn parse_group(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

/// Canonical text form; `parse_expr(&print_expr(e)) == e` for every AST.
pub fn print_expr(e: &RingExpr) -> String {
    e.to_string()
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Dihedral(n) => write!(f, "D{n}"),
            GroupExpr::Quaternion8 => write!(f, "Q8"),
            GroupExpr::Symmetric(n) => write!(f, "S{n}"),
            GroupExpr::Product(a, b) => {
                if matches!(**b, GroupExpr::Product(..)) {
                    write!(f, "{a} x ({b})")
                } else {
                    write!(f, "{a} x {b}")
                }
            }
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::ZMod(n) => write!(f, "Z{n}"),
            RingExpr::Product(a, b) => {
                if matches!(**b, RingExpr::Product(..)) {
                    write!(f, "{a} x ({b})")
                } else {
                    write!(f, "{a} x {b}")
                }
            }
            RingExpr::GroupRing(a, g) => {
                if matches!(**a, RingExpr::Product(..)) {
                    write!(f, "({a})[{g}]")
                } else {
                    write!(f, "{a}[{g}]")
                }
            }
        }
    }
}

impl FromStr for RingExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

impl FromStr for GroupExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gp(a: GroupExpr, b: GroupExpr) -> GroupExpr {
        GroupExpr::Product(Box::new(a), Box::new(b))
    }

    #[test]
    fn grammar_cases() {
        assert_eq!(
            parse_expr("Z4[C2 x C2]").unwrap(),
            RingExpr::group_ring(
                RingExpr::ZMod(4),
                gp(GroupExpr::Cyclic(2), GroupExpr::Cyclic(2))
            )
        );
        assert_eq!(
            parse_expr("Z3[S3]").unwrap(),
            RingExpr::group_ring(RingExpr::ZMod(3), GroupExpr::Symmetric(3))
        );
        assert_eq!(parse_expr(" Z 3 [ Q 8 ] ").unwrap().to_string(), "Z3[Q8]");
        // Brackets bind tighter than the ring product.
        assert_eq!(
            parse_expr("Z2 x Z3[C2]").unwrap(),
            RingExpr::Product(
                Box::new(RingExpr::ZMod(2)),
                Box::new(RingExpr::group_ring(RingExpr::ZMod(3), GroupExpr::Cyclic(2)))
            )
        );
        // Left associativity.
        assert_eq!(
            parse_group("C2xC3xC4").unwrap(),
            gp(gp(GroupExpr::Cyclic(2), GroupExpr::Cyclic(3)), GroupExpr::Cyclic(4))
        );
    }

    #[test]
    fn malformed_inputs_carry_positions() {
        let e = parse_expr("Z1").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(e.message.contains("modulus must be ≥ 2"));
        let e = parse_expr("C2").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(e.expected.contains(&"\"Z\"".to_string()));
        let e = parse_expr("Z4[").unwrap_err();
        assert_eq!(e.offset, 3);
        assert!(!e.expected.is_empty());
        assert_eq!(parse_expr("Z4[S5]").unwrap_err().offset, 3);
        assert_eq!(parse_expr("Z4 Z2").unwrap_err().offset, 3);
        assert_eq!(parse_expr("Z4[Q7]").unwrap_err().offset, 3);
        assert_eq!(parse_expr("Z4#").unwrap_err().offset, 2);
    }

    #[test]
    fn printing() {
        let e = RingExpr::group_ring(RingExpr::ZMod(2), GroupExpr::Cyclic(2));
        assert_eq!(print_expr(&e), "Z2[C2]");
        let e = RingExpr::group_ring(
            RingExpr::ZMod(2),
            gp(GroupExpr::Cyclic(2), GroupExpr::Cyclic(4)),
        );
        assert_eq!(print_expr(&e), "Z2[C2 x C4]");
        let right = gp(GroupExpr::Cyclic(2), gp(GroupExpr::Cyclic(3), GroupExpr::Cyclic(5)));
        assert_eq!(right.to_string(), "C2 x (C3 x C5)");
        let coeff = RingExpr::group_ring(
            RingExpr::Product(Box::new(RingExpr::ZMod(2)), Box::new(RingExpr::ZMod(3))),
            GroupExpr::Cyclic(2),
        );
        assert_eq!(coeff.to_string(), "(Z2 x Z3)[C2]");
    }

    #[test]
    fn sizes() {
        assert_eq!(parse_expr("Z3[C6]").unwrap().size(), 729);
        assert_eq!(parse_expr("Z2 x Z3").unwrap().size(), 6);
        assert_eq!(parse_group("S4 x D3").unwrap().order(), 144);
    }

    fn arb_group() -> impl Strategy<Value = GroupExpr> {
        let leaf = prop_oneof![
            (1u64..20).prop_map(GroupExpr::Cyclic),
            (2u64..20).prop_map(GroupExpr::Dihedral),
            Just(GroupExpr::Quaternion8),
            (1u64..=4).prop_map(GroupExpr::Symmetric),
        ];
        leaf.prop_recursive(3, 8, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| GroupExpr::Product(Box::new(a), Box::new(b)))
        })
    }

    fn arb_ring() -> impl Strategy<Value = RingExpr> {
        let leaf = (2u64..50).prop_map(RingExpr::ZMod);
        leaf.prop_recursive(3, 8, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| RingExpr::Product(Box::new(a), Box::new(b))),
                (inner, arb_group()).prop_map(|(a, g)| RingExpr::GroupRing(Box::new(a), g)),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_print(e in arb_ring()) {
            let text = print_expr(&e);
            prop_assert_eq!(parse_expr(&text).unwrap(), e);
        }

        #[test]
        fn print_parse_is_idempotent(e in arb_ring()) {
            let once = print_expr(&e);
            let twice = print_expr(&parse_expr(&once).unwrap());
            prop_assert_eq!(once, twice);
        }
    }
}

//! Text syntax for braid words.
//!
//! Whitespace-separated items: Artin atoms `s<i>`, band atoms `a(<t>,<s>)`,
//! the fundamental element `D`, and parenthesised groups. Any item may
//! carry an integer exponent such as `^-1`. Either atom syntax is accepted
//! for either target structure and translated (`s<i>` is `a(i+1,i)`); `D`
//! always means the target structure's δ. Empty input is the identity.

use std::fmt;

use crate::bkl::{band_in_artin, BklAtom};
use crate::normal_form::{GreedyNF, RationalNF};
use crate::simple::{Kind, SimpleElement};
use crate::structure::Structure;
use crate::word::{BraidWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken(String),
    IndexOutOfRange { index: usize, strands: usize },
    BadAtomOrder { t: usize, s: usize },
    Unbalanced,
    BadExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnknownToken(t) => write!(f, "unknown token `{t}`"),
            ParseErrorKind::IndexOutOfRange { index, strands } => {
                write!(f, "index {index} out of range for {strands} strands")
            }
            ParseErrorKind::BadAtomOrder { t, s } => {
                write!(f, "band atom a({t},{s}) needs t > s ≥ 1")
            }
            ParseErrorKind::Unbalanced => f.write_str("unbalanced parentheses"),
            ParseErrorKind::BadExponent => f.write_str("malformed exponent"),
        }
    }
}

pub fn parse_word(text: &str, kind: Kind, strands: usize) -> Result<BraidWord, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        kind,
        strands,
    };
    let letters = parser.sequence(0)?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error(ParseErrorKind::Unbalanced));
    }
    Ok(BraidWord::from_letters_unchecked(kind, strands, letters))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    kind: Kind,
    strands: usize,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sequence(&mut self, depth: usize) -> Result<Vec<Letter>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => {
                    if depth > 0 {
                        return Err(self.error(ParseErrorKind::Unbalanced));
                    }
                    return Ok(out);
                }
                Some(b')') => {
                    if depth == 0 {
                        return Err(self.error(ParseErrorKind::Unbalanced));
                    }
                    return Ok(out);
                }
                Some(_) => {
                    let item = self.item(depth)?;
                    let exp = self.exponent()?;
                    for _ in 0..exp.unsigned_abs() {
                        if exp > 0 {
                            out.extend_from_slice(&item);
                        } else {
                            out.extend(item.iter().rev().map(|l| l.inverted()));
                        }
                    }
                }
            }
        }
    }

    fn item(&mut self, depth: usize) -> Result<Vec<Letter>, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sequence(depth + 1)?;
                self.pos += 1; // ')'
                Ok(inner)
            }
            Some(b'D') => {
                self.pos += 1;
                let st = Structure::new(self.kind, self.strands).map_err(|_| ParseError {
                    position: start,
                    kind: ParseErrorKind::IndexOutOfRange {
                        index: 0,
                        strands: self.strands,
                    },
                })?;
                Ok(st.simple_word(st.delta()).letters().to_vec())
            }
            Some(b's') => {
                self.pos += 1;
                let i = self.number().ok_or_else(|| self.unknown(start))?;
                if i == 0 || i >= self.strands {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::IndexOutOfRange {
                            index: i,
                            strands: self.strands,
                        },
                    });
                }
                Ok(vec![match self.kind {
                    Kind::Artin => Letter::positive(i - 1),
                    Kind::Bkl => Letter::positive(BklAtom { t: i + 1, s: i }.atom_id()),
                }])
            }
            Some(b'a') => {
                self.pos += 1;
                let mut ok = self.eat(b'(');
                let t = self.number();
                ok &= self.eat(b',');
                let s = self.number();
                ok &= self.eat(b')');
                let (Some(t), Some(s), true) = (t, s, ok) else {
                    return Err(self.unknown(start));
                };
                if s == 0 || s >= t {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::BadAtomOrder { t, s },
                    });
                }
                if t > self.strands {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::IndexOutOfRange {
                            index: t,
                            strands: self.strands,
                        },
                    });
                }
                let atom = BklAtom { t, s };
                Ok(match self.kind {
                    Kind::Bkl => vec![Letter::positive(atom.atom_id())],
                    Kind::Artin => band_in_artin(atom),
                })
            }
            _ => Err(self.unknown(start)),
        }
    }

    fn unknown(&self, start: usize) -> ParseError {
        let end = self.src[start..]
            .iter()
            .position(|b| b.is_ascii_whitespace())
            .map_or(self.src.len(), |p| start + p);
        ParseError {
            position: start,
            kind: ParseErrorKind::UnknownToken(
                String::from_utf8_lossy(&self.src[start..end.max(start + 1).min(self.src.len())])
                    .into_owned(),
            ),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let negative = self.eat(b'-');
        let n = self
            .number()
            .ok_or_else(|| self.error(ParseErrorKind::BadExponent))?;
        Ok(if negative { -(n as i64) } else { n as i64 })
    }
}

fn format_letter(kind: Kind, l: Letter) -> String {
    let base = match kind {
        Kind::Artin => format!("s{}", l.atom + 1),
        Kind::Bkl => {
            let a = BklAtom::from_id(l.atom);
            format!("a({},{})", a.t, a.s)
        }
    };
    if l.inverse {
        base + "^-1"
    } else {
        base
    }
}

pub fn format_word(w: &BraidWord) -> String {
    w.letters()
        .iter()
        .map(|&l| format_letter(w.kind(), l))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `(s1 s2)`
pub fn format_simple(st: &Structure, s: &SimpleElement) -> String {
    format!("({})", format_word(&st.simple_word(s)))
}

fn format_factors(st: &Structure, factors: &[SimpleElement]) -> String {
    factors.iter().map(|f| format_simple(st, f)).collect()
}

/// `D^-1 (s1 s2)`; the δ power is omitted when zero.
pub fn format_greedy(st: &Structure, nf: &GreedyNF) -> String {
    let factors = format_factors(st, &nf.factors);
    let delta = match nf.k {
        0 => String::new(),
        1 => "D".to_string(),
        k => format!("D^{k}"),
    };
    match (delta.is_empty(), factors.is_empty()) {
        (true, _) => factors,
        (false, true) => delta,
        (false, false) => format!("{delta} {factors}"),
    }
}

/// Negative and positive parts, e.g. `("(s1 s2)(s2 s1)", "(s2 s1)(s1 s2)")`.
pub fn format_rational_parts(st: &Structure, nf: &RationalNF) -> (String, String) {
    (
        format_factors(st, &nf.neg_factors),
        format_factors(st, &nf.pos_factors),
    )
}

/// The whole element as one re-parseable word: `(u)^-1 v`.
pub fn format_rational(st: &Structure, nf: &RationalNF) -> String {
    let (neg, pos) = format_rational_parts(st, nf);
    match (neg.is_empty(), pos.is_empty()) {
        (true, _) => pos,
        (false, true) => format!("({neg})^-1"),
        (false, false) => format!("({neg})^-1 {pos}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let w = parse_word("s1 s2^-1", Kind::Artin, 3).unwrap();
        assert_eq!(w.letters(), &[Letter::positive(0), Letter::negative(1)]);
        let w = parse_word("a(3,1)", Kind::Bkl, 3).unwrap();
        assert_eq!(w.letters(), &[Letter::positive(1)]);
        assert!(parse_word("", Kind::Artin, 3).unwrap().is_empty());
    }

    #[test]
    fn parse_errors() {
        let e = parse_word("a(1,3)", Kind::Bkl, 3).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadAtomOrder { t: 1, s: 3 });
        let e = parse_word("s1 s5", Kind::Artin, 4).unwrap_err();
        assert_eq!(e.position, 3);
        assert_eq!(
            e.kind,
            ParseErrorKind::IndexOutOfRange {
                index: 5,
                strands: 4
            }
        );
        assert!(matches!(
            parse_word("s1 x2", Kind::Artin, 4).unwrap_err().kind,
            ParseErrorKind::UnknownToken(_)
        ));
        assert_eq!(
            parse_word("(s1 s2", Kind::Artin, 4).unwrap_err().kind,
            ParseErrorKind::Unbalanced
        );
        assert_eq!(
            parse_word("s1)", Kind::Artin, 4).unwrap_err().kind,
            ParseErrorKind::Unbalanced
        );
        assert_eq!(
            parse_word("s1^x", Kind::Artin, 4).unwrap_err().kind,
            ParseErrorKind::BadExponent
        );
    }

    #[test]
    fn groups_and_powers() {
        let w = parse_word("(s1 s2)^-1 D s1^2", Kind::Artin, 3).unwrap();
        assert_eq!(format_word(&w), "s2^-1 s1^-1 s1 s2 s1 s1 s1");
        let w = parse_word("s2", Kind::Bkl, 3).unwrap();
        assert_eq!(format_word(&w), "a(3,2)");
        let w = parse_word("a(3,1)", Kind::Artin, 3).unwrap();
        assert_eq!(format_word(&w), "s2 s1 s2^-1");
    }

    #[test]
    fn greedy_and_rational_printing() {
        let st = Structure::artin(3);
        let nf = st
            .greedy_nf(&parse_word("s1^-1", Kind::Artin, 3).unwrap())
            .unwrap();
        assert_eq!(format_greedy(&st, &nf), "D^-1 (s1 s2)");
        let x = parse_word("s2 s2 s1^-1 s1^-1", Kind::Artin, 3).unwrap();
        let r = st.rational_nf_of_word(&x).unwrap();
        let (neg, pos) = format_rational_parts(&st, &r);
        assert_eq!(neg, "(s1 s2)(s2 s1)");
        assert_eq!(pos, "(s2 s1)(s1 s2)");
        let back = parse_word(&format_rational(&st, &r), Kind::Artin, 3).unwrap();
        assert!(st.equals(&back, &x).unwrap());
        let back = parse_word(&format_greedy(&st, &nf), Kind::Artin, 3).unwrap();
        assert_eq!(st.greedy_nf(&back).unwrap(), nf);
    }
}

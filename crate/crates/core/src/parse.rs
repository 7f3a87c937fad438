//! Expression syntax for elements.
//!
//! ```text
//! element  := term (('+'|'-') term)*
//! term     := [coeff '*'] monomial | coeff
//! coeff    := rat | rat 'i' | '(' rat ('+'|'-') rat 'i' ')'
//! rat      := ['-'] int ['/' posint]
//! monomial := factor ('.' factor)*
//! factor   := id ['*'] | 't' ['*' | '^' signed-int]
//! ```
//!
//! `t` is only recognized for Laurent algebras. Whitespace is ignored between
//! tokens, and a leading `-` may negate the first term.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;
use crate::lpa::{Element, LaurentElement};
use crate::rewrite::{Letter, RawCombination, RewriteOrder};
use crate::scalar::GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    graph: &'a Arc<Graph>,
    laurent: bool,
}

fn is_id_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(start, "expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn rat(&mut self) -> Result<BigRational, ParseError> {
        let neg = self.eat('-');
        let numer = self.digits()?;
        let mut value = BigRational::from_integer(numer);
        if self.eat('/') {
            let at = self.pos;
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(self.error(at, "zero denominator"));
            }
            value /= BigRational::from_integer(denom);
        }
        Ok(if neg { -value } else { value })
    }

    /// `i` directly after a rational, not followed by an identifier character.
    fn eat_imaginary_unit(&mut self) -> bool {
        let rest = &self.src[self.pos..];
        let mut chars = rest.chars();
        if chars.next() == Some('i') && !chars.next().is_some_and(is_id_char) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn coeff(&mut self) -> Result<GaussianRational, ParseError> {
        if self.eat('(') {
            let re = self.rat()?;
            let minus = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Err(self.error(self.pos, "expected '+' or '-' in complex coefficient"));
            };
            let im = self.rat()?;
            if !self.eat_imaginary_unit() {
                return Err(self.error(self.pos, "expected 'i'"));
            }
            self.expect(')')?;
            return Ok(GaussianRational::new(re, if minus { -im } else { im }));
        }
        let r = self.rat()?;
        if self.eat_imaginary_unit() {
            Ok(GaussianRational::new(BigRational::zero(), r))
        } else {
            Ok(GaussianRational::from(r))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_raw() {
            Some(c) if is_id_start(c) => {}
            _ => return Err(self.error(start, "expected a vertex or edge id")),
        }
        while matches!(self.peek_raw(), Some(c) if is_id_char(c)) {
            self.pos += 1;
        }
        Ok((start, &self.src[start..self.pos]))
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let at = self.pos;
        let neg = self.eat('-');
        let n = self.digits()?;
        let n: i64 = n
            .try_into()
            .map_err(|_| self.error(at, "exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn monomial(&mut self) -> Result<(Vec<Letter>, i64), ParseError> {
        let mut word = Vec::new();
        let mut t = 0i64;
        loop {
            let (at, id) = self.ident()?;
            if self.laurent && id == "t" {
                if self.eat('*') {
                    t -= 1;
                } else if self.eat('^') {
                    t += self.signed_int()?;
                } else {
                    t += 1;
                }
            } else {
                let adjoint = self.eat('*');
                let letter = if let Some(v) = self.graph.vertex(id) {
                    Letter::Vertex(v)
                } else if let Some(e) = self.graph.edge(id) {
                    if adjoint {
                        Letter::Ghost(e)
                    } else {
                        Letter::Edge(e)
                    }
                } else if id == "t" {
                    return Err(
                        self.error(at, "Laurent variable t is not available in a plain algebra")
                    );
                } else {
                    return Err(self.error(at, format!("unknown generator {id}")));
                };
                word.push(letter);
            }
            if !self.eat('.') {
                break;
            }
        }
        Ok((word, t))
    }

    fn term(&mut self, raw: &mut RawCombination, negate: bool) -> Result<(), ParseError> {
        let starts_coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some('-') => {
                // "-2*e" is a coefficient, "-e" negates a monomial
                let rest = self.src[self.pos + 1..].trim_start();
                rest.starts_with(|c: char| c.is_ascii_digit() || c == '(')
            }
            _ => false,
        };
        let mut negate = negate;
        let coeff = if starts_coeff {
            if self.src[self.pos..].starts_with('-')
                && self.src[self.pos + 1..].trim_start().starts_with('(')
            {
                self.pos += 1;
                negate = !negate;
            }
            let c = self.coeff()?;
            if !self.eat('*') {
                let c = if negate { -c } else { c };
                raw.push(c, Vec::new(), 0);
                return Ok(());
            }
            c
        } else {
            if self.eat('-') {
                negate = !negate;
            }
            GaussianRational::one()
        };
        let (word, t) = self.monomial()?;
        raw.push(if negate { -coeff } else { coeff }, word, t);
        Ok(())
    }

    fn element(&mut self) -> Result<RawCombination, ParseError> {
        let mut raw = RawCombination::new(self.graph.clone());
        if self.peek().is_none() {
            return Err(self.error(self.pos, "empty expression"));
        }
        self.term(&mut raw, false)?;
        loop {
            let negate = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            self.term(&mut raw, negate)?;
        }
        if self.peek().is_some() {
            return Err(self.error(self.pos, "unexpected trailing input"));
        }
        Ok(raw)
    }
}

/// Parses an expression into an unreduced combination of generator words.
pub fn parse_raw(
    graph: &Arc<Graph>,
    src: &str,
    laurent: bool,
) -> Result<RawCombination, ParseError> {
    let mut p = Parser {
        src,
        pos: 0,
        graph,
        laurent,
    };
    p.element()
}

/// Parses and normalizes an element of `L(E)`.
pub fn parse_element(graph: &Arc<Graph>, src: &str) -> Result<Element, ParseError> {
    let raw = parse_raw(graph, src, false)?;
    Ok(raw
        .normalize_plain(RewriteOrder::Leftmost)
        .expect("plain parse has no t"))
}

/// Parses and normalizes an element of `L(E) ⊗ k[t, t⁻¹]`.
pub fn parse_laurent(graph: &Arc<Graph>, src: &str) -> Result<LaurentElement, ParseError> {
    Ok(parse_raw(graph, src, true)?.normalize(RewriteOrder::Leftmost))
}

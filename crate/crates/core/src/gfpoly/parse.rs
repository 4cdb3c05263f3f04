//! Text form of polynomials in `T`.
//!
//! The printer (see `Display for Poly`) writes descending terms such as
//! `T^6+2*T^4+T^2+2*T+2`. The parser accepts that form and a little more:
//! whitespace, `-`, products and parenthesized powers, e.g. `-T*(T^2+1)^2`.
//! Integer literals are reduced modulo `q`.

use super::fq::PrimeField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Exponents larger than this are rejected to keep accidental inputs cheap.
const MAX_EXPONENT: u64 = 1 << 20;

pub fn parse_poly(field: PrimeField, text: &str) -> Result<Poly> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { field, tokens, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("unexpected {:?} in {text:?}", p.tokens[p.pos])));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    let Some(v) = d.to_digit(10) else { break };
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(v as u64))
                        .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                    chars.next();
                }
                out.push(Tok::Num(n));
            }
            'T' => {
                chars.next();
                out.push(Tok::Var);
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                chars.next();
                out.push(match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                });
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    field: PrimeField,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    // term := factor ('*'? factor)*, juxtaposition allowed as in `2T`
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) || matches!(self.peek(), Some(Tok::Var | Tok::LParen)) {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    // factor := atom ('^' number)?
    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    if k > MAX_EXPONENT {
                        return Err(Error::Parse(format!("exponent {k} too large")));
                    }
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse("expected an exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let r = n % self.field.q() as u64;
                Ok(Poly::constant(self.field, r as i64))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(Poly::t(self.field))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            other => Err(Error::Parse(format!("expected a term, found {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn round_trip_canonical_text() {
        for s in ["T^6+2*T^4+T^2+2*T+2", "T^13+2*T+1", "T", "0", "2", "T^2+T+2"] {
            assert_eq!(parse_poly(f(3), s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn negation_and_products() {
        let a = parse_poly(f(3), "-T*(T^2+1)").unwrap();
        assert_eq!(a.to_string(), "2*T^3+2*T");
        let b = parse_poly(f(5), "2T (T+1)^2 - 7").unwrap();
        assert_eq!(b.to_string(), "2*T^3+4*T^2+2*T+3");
        assert_eq!(parse_poly(f(3), "T^2-1").unwrap().to_string(), "T^2+2");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "T^", "x+1", "(T+1", "T+*2", "T^99999999"] {
            assert!(parse_poly(f(3), s).is_err(), "{s}");
        }
    }
}

//! Polynomial parser for the fixed surface grammar:
//!
//! ```text
//! poly    := ['-'] term (('+'|'-') term)*
//! term    := coeff | coeff '*' factors | factors
//! factors := factor ('*' factor)*
//! factor  := ident ['^' uint]
//! coeff   := int ['/' uint]          (prime field: int only)
//! ```
//!
//! Whitespace between tokens is insignificant.  There is no parenthesized
//! grouping.  Errors carry the byte offset of the offending token.

use std::sync::Arc;

use num::bigint::BigInt;

use crate::coef::Coef;
use crate::error::{Error, Result};
use crate::poly::{Exponent, Polynomial};
use crate::ring::PolyRing;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(text[start..i].to_string()), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        }
    }
    Ok(Lexer { toks, end: bytes.len() })
}

struct Parser<'r> {
    ring: &'r Arc<PolyRing>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn parse_uint(&mut self) -> Result<u32> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(digits)) => digits.parse::<u32>().map_err(|_| Error::Parse {
                pos,
                msg: "integer out of range".into(),
            }),
            _ => Err(Error::Parse { pos, msg: "expected an unsigned integer".into() }),
        }
    }

    /// coeff := int ['/' uint], with the numerator sign already consumed by
    /// the caller when it arises from a leading `-` on the integer itself.
    fn parse_coeff(&mut self, negate: bool) -> Result<Coef> {
        let pos = self.here();
        let digits = match self.bump() {
            Some(Tok::Int(d)) => d,
            _ => return Err(Error::Parse { pos, msg: "expected an integer".into() }),
        };
        let mut numer: BigInt = digits.parse().expect("digit token");
        if negate {
            numer = -numer;
        }
        let denom: BigInt = if matches!(self.peek(), Some(Tok::Slash)) {
            let slash_pos = self.here();
            self.bump();
            let dpos = self.here();
            match self.bump() {
                Some(Tok::Int(d)) => {
                    let v: BigInt = d.parse().expect("digit token");
                    if matches!(self.ring.coef(), crate::coef::CoefField::Prime(_)) {
                        return Err(Error::Parse {
                            pos: slash_pos,
                            msg: "fractional coefficient in a prime field".into(),
                        });
                    }
                    v
                }
                _ => {
                    return Err(Error::Parse {
                        pos: dpos,
                        msg: "expected a denominator".into(),
                    })
                }
            }
        } else {
            BigInt::from(1)
        };
        self.ring
            .coef()
            .from_ratio(numer, denom)
            .map_err(|e| match e {
                Error::InvalidArgument(msg) => Error::Parse { pos, msg },
                other => other,
            })
    }

    /// factor := ident ['^' uint]; accumulates into `exp`.
    fn parse_factor(&mut self, exp: &mut Exponent) -> Result<()> {
        let pos = self.here();
        let name = match self.bump() {
            Some(Tok::Ident(n)) => n,
            _ => return Err(Error::Parse { pos, msg: "expected a variable".into() }),
        };
        let var = self
            .ring
            .var_index(&name)
            .ok_or(Error::UnknownVariable { name, pos })?;
        let e = if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            self.parse_uint()?
        } else {
            1
        };
        exp.0[var] = exp.0[var]
            .checked_add(e)
            .ok_or_else(|| Error::Parse { pos, msg: "exponent out of range".into() })?;
        Ok(())
    }

    /// term := coeff | coeff '*' factors | factors
    fn parse_term(&mut self, negate: bool) -> Result<(Exponent, Coef)> {
        let mut exp = Exponent::zero(self.ring.arity());
        let coef = match self.peek() {
            Some(Tok::Int(_)) => {
                let c = self.parse_coeff(negate)?;
                if matches!(self.peek(), Some(Tok::Star)) {
                    self.bump();
                    self.parse_factor(&mut exp)?;
                    while matches!(self.peek(), Some(Tok::Star)) {
                        self.bump();
                        self.parse_factor(&mut exp)?;
                    }
                }
                c
            }
            Some(Tok::Minus) => {
                // a signed integer coefficient, e.g. the `-3` in `x - -3*y`
                self.bump();
                if !matches!(self.peek(), Some(Tok::Int(_))) {
                    return self.fail("expected an integer after `-`");
                }
                let c = self.parse_coeff(!negate)?;
                if matches!(self.peek(), Some(Tok::Star)) {
                    self.bump();
                    self.parse_factor(&mut exp)?;
                    while matches!(self.peek(), Some(Tok::Star)) {
                        self.bump();
                        self.parse_factor(&mut exp)?;
                    }
                }
                return Ok((exp, c));
            }
            Some(Tok::Ident(_)) => {
                self.parse_factor(&mut exp)?;
                while matches!(self.peek(), Some(Tok::Star)) {
                    self.bump();
                    self.parse_factor(&mut exp)?;
                }
                let one = self.ring.coef().one();
                if negate {
                    self.ring.coef().neg(&one)
                } else {
                    one
                }
            }
            _ => return self.fail("expected a term"),
        };
        Ok((exp, coef))
    }

    fn parse_poly(&mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate = true;
        }
        terms.push(self.parse_term(negate)?);
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    terms.push(self.parse_term(false)?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    terms.push(self.parse_term(true)?);
                }
                None => break,
                Some(_) => return self.fail("expected `+`, `-`, or end of input"),
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses `text` as a polynomial over `ring`.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let lexer = lex(text)?;
    let mut parser = Parser { ring, toks: lexer.toks, pos: 0, end: lexer.end };
    parser.parse_poly()
}

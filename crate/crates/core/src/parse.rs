//! Text format for forms.
//!
//! ```text
//! poly   := ["-"] term (("+" | "-") term)*
//! term   := coeff ["*" mono] | mono
//! coeff  := int ["/" int]
//! mono   := var ["^" int] ("*" var ["^" int])*
//! ```
//!
//! Variable names follow the ring: `x0..x2`, `d0..d2`, `z0..z3`, `w0..w3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::poly::{Monomial, MultiPoly, Ring};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at column {pos}: term of degree {found} in a form of degree {expected}")]
    Inhomogeneous { pos: usize, expected: u32, found: u32 },
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
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

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

pub fn parse_poly(text: &str, ring: Ring) -> Result<MultiPoly, ParseError> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut degree: Option<u32> = None;
    let mut first = true;
    loop {
        let negative = if lx.eat(b'-') {
            true
        } else if first || lx.eat(b'+') {
            false
        } else {
            return Err(lx.err("expected '+' or '-'"));
        };
        first = false;
        lx.skip_ws();
        let term_pos = lx.pos + 1;
        let (mono, coeff) = parse_term(&mut lx, ring)?;
        let d = mono.degree();
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(ParseError::Inhomogeneous {
                    pos: term_pos,
                    expected: e,
                    found: d,
                })
            }
            _ => {}
        }
        terms.push((mono, if negative { -coeff } else { coeff }));
        if lx.peek().is_none() {
            break;
        }
    }
    Ok(MultiPoly::from_terms(ring, degree.unwrap_or(0), terms))
}

fn parse_term(lx: &mut Lexer, ring: Ring) -> Result<(Monomial, Scalar), ParseError> {
    let field = ring.field;
    let mut coeff = field.one();
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = lx.int()?;
            let den = if lx.eat(b'/') { lx.int()? } else { BigInt::from(1) };
            if den == BigInt::from(0) {
                return Err(lx.err("zero denominator"));
            }
            let r = Scalar::Rational(BigRational::new(num, den));
            coeff = match field {
                Field::Rational => r,
                Field::Prime(p) => r.reduce_mod(p).map_err(|e| lx.err(e.to_string()))?,
            };
            if !lx.eat(b'*') {
                return Ok((Monomial::one(), coeff));
            }
        }
        Some(_) => {}
        None => return Err(lx.err("unexpected end of input")),
    }
    let mut mono = Monomial::one();
    loop {
        let i = parse_var(lx, ring)?;
        let e = if lx.eat(b'^') {
            let e = lx.int()?;
            u8::try_from(e).map_err(|_| lx.err("exponent too large"))?
        } else {
            1
        };
        mono.0[i] = mono.0[i].checked_add(e).ok_or_else(|| lx.err("exponent too large"))?;
        if !lx.eat(b'*') {
            break;
        }
    }
    Ok((mono, coeff))
}

fn parse_var(lx: &mut Lexer, ring: Ring) -> Result<usize, ParseError> {
    let c = lx.peek().ok_or_else(|| lx.err("expected a variable"))?;
    if c != ring.prefix() as u8 {
        return Err(lx.err(format!(
            "expected a variable {}0..{}{}",
            ring.prefix(),
            ring.prefix(),
            ring.nvars - 1
        )));
    }
    lx.pos += 1;
    let at = lx.pos;
    match lx.src.get(at) {
        Some(d) if d.is_ascii_digit() && ((d - b'0') as usize) < ring.nvars => {
            lx.pos += 1;
            if lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
                return Err(lx.err("variable index out of range"));
            }
            Ok((d - b'0') as usize)
        }
        _ => Err(lx.err("variable index out of range")),
    }
}

/// Canonical text of a form; inverse of [`parse_poly`].
pub fn print_poly(p: &MultiPoly) -> String {
    p.to_string()
}

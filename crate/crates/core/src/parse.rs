//! Text input for scalars, polynomials and matrix literals.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | 'i' | 'r2' | identifier | '(' expr ')' | '-' atom
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::{RingContext, SuperPoly};
use crate::scalar::FieldScalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: Option<&'a Arc<RingContext>>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos + 1, msg)
    }

    fn expr(&mut self) -> Result<SuperPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            let mut acc = SuperPoly::one();
            for _ in 0..n {
                acc = acc.try_mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<SuperPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(Error::DivisionByZero);
                    }
                    q /= BigRational::from_integer(den);
                }
                Ok(SuperPoly::constant(FieldScalar::from_rational(q)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                match name {
                    "i" => Ok(SuperPoly::constant(FieldScalar::i())),
                    "r2" => Ok(SuperPoly::constant(FieldScalar::sqrt2())),
                    _ => match self.ctx {
                        Some(ctx) => Ok(ctx.var(name)?.poly()),
                        None => Err(Error::UnknownVariable(name.to_string())),
                    },
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial. Identifiers other than `i` and `r2` are looked up in
/// `ctx`.
pub fn parse_poly(text: &str, ctx: Option<&Arc<RingContext>>) -> Result<SuperPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(match ctx {
        Some(c) if out.context().is_none() => out.rebind(c)?,
        _ => out,
    })
}

/// Parses `a + b*i + c*r2 + d*i*r2` (any expression without variables).
pub fn parse_scalar(text: &str) -> Result<FieldScalar> {
    let p = parse_poly(text, None)?;
    if !p.is_constant() {
        return Err(Error::parse(1, "expected a constant"));
    }
    Ok(p.constant_term())
}

/// Splits on `sep` at parenthesis depth zero.
pub(crate) fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Parses a matrix literal: rows separated by `;`, entries by `,`.
pub fn parse_matrix_entries(
    text: &str,
    ctx: Option<&Arc<RingContext>>,
) -> Result<Vec<Vec<SuperPoly>>> {
    let rows: Vec<Vec<SuperPoly>> = split_top(text.trim(), ';')
        .into_iter()
        .map(|row| {
            split_top(row, ',')
                .into_iter()
                .map(|e| parse_poly(e, ctx))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::parse(1, "rows of unequal length"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Parity;

    #[test]
    fn parses_scalars() {
        assert_eq!(
            parse_scalar("1/2*r2").unwrap(),
            FieldScalar::sqrt2().scale(&BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(
            parse_scalar("(1 + i)*(1 - i)").unwrap(),
            FieldScalar::from_i64(2)
        );
        assert!(parse_scalar("x").is_err());
        assert!(matches!(parse_scalar("1 +"), Err(Error::Parse { .. })));
        assert_eq!(parse_scalar("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn parses_polynomials_in_context() {
        let ctx = RingContext::new(&[
            ("x", Parity::Even),
            ("xi", Parity::Odd),
            ("eta", Parity::Odd),
        ])
        .unwrap();
        let p = parse_poly("2*x^2 - eta*xi", Some(&ctx)).unwrap();
        assert_eq!(p.to_string(), "xi*eta + 2*x^2");
        assert!(parse_poly("y", Some(&ctx)).is_err());
    }

    #[test]
    fn parses_matrix_literals() {
        let m = parse_matrix_entries("1, 0; (1 + i), -r2", None).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[1][0].constant_term(), parse_scalar("1 + i").unwrap());
        assert!(parse_matrix_entries("1, 0; 1", None).is_err());
    }
}

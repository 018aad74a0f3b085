//! Recursive-descent parser for polynomial text.
//!
//! Grammar (standard precedence, `^` binds tightest, implicit multiplication
//! disallowed):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | variable | '(' expr ')' | '-' factor
//! ```
//!
//! Integer coefficients are reduced mod p.

use crate::error::{Error, Result};
use crate::poly::{Poly, RingCtx};
use std::sync::Arc;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: Arc<RingCtx>,
}

pub fn parse_poly(text: &str, ring: &Arc<RingCtx>) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring: ring.clone(),
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.uint()?;
            if e > 10_000 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let field = &self.ring.field;
                Ok(Poly::constant(self.ring.clone(), field.from_int(n as i64)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Poly::var(self.ring.clone(), i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn ring(p: u32, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(
            FieldCtx::new(p, 1).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
        )
    }

    #[test]
    fn hauser_polynomial() {
        let r = ring(2, &["Z", "X", "Y"]);
        let f = parse_poly("Z^2+Y^7+X^4*Y", &r).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.to_string(), "Y^7+X^4*Y+Z^2");
    }

    #[test]
    fn zero_and_mod_p_collapse() {
        let r3 = ring(3, &["Z", "Y"]);
        assert!(parse_poly("0", &r3).unwrap().is_zero());
        // 3*Y vanishes mod 3
        assert_eq!(parse_poly("Z^2 + 3*Y", &r3).unwrap().to_string(), "Z^2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(2, &["X"]);
        match parse_poly("X^2+W", &r) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "W");
                assert_eq!(pos, 4);
            }
            other => panic!("expected UnknownVariable, got {other:?}"),
        }
        assert!(parse_poly("X*(1+", &r).is_err());
        assert!(parse_poly("2 X", &r).is_err(), "implicit products rejected");
    }

    #[test]
    fn parentheses_and_signs() {
        let r = ring(5, &["x"]);
        let f = parse_poly("(x+2)^2-4", &r).unwrap();
        assert_eq!(f, parse_poly("x^2+4*x", &r).unwrap());
    }
}

//! Recursive-descent parser for the text formats of scalars, parametric
//! scalars and noncommutative polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := power (('*' | '/')? power)*
//! power  := atom ('^' sign? int)?
//! atom   := int | 'q' | ident ('[' int (',' int)* ']')? | '(' expr ')' | '-' power
//! ```
//!
//! A juxtaposed factor multiplies, so `2q` equals `2*q`.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Values an expression can be evaluated into.
pub trait ExprTarget: Sized {
    fn from_int(n: BigInt) -> Self;
    fn q() -> Self;
    fn ident(name: &str, indices: Option<Vec<i64>>, at: usize) -> Result<Self>;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn div(self, o: Self, at: usize) -> Result<Self>;
    fn pow(self, e: i64, at: usize) -> Result<Self>;
}

pub fn parse_expr<T: ExprTarget>(input: &str) -> Result<T> {
    let mut p = Parser { src: input.as_bytes(), pos: 0 };
    let v = p.expr::<T>()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(format!("unexpected trailing input '{}'", &input[p.pos..])));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: String) -> Error {
        Error::Parse { offset: self.pos, message }
    }

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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr<T: ExprTarget>(&mut self) -> Result<T> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term::<T>()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_')
    }

    fn term<T: ExprTarget>(&mut self) -> Result<T> {
        let mut acc = self.power::<T>()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(self.power()?);
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.power()?;
                acc = acc.div(rhs, at)?;
            } else if self.starts_atom() {
                acc = acc.mul(self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power<T: ExprTarget>(&mut self) -> Result<T> {
        let base = self.atom::<T>()?;
        if self.eat(b'^') {
            let at = self.pos;
            let neg = if self.eat(b'-') {
                true
            } else {
                self.eat(b'+');
                false
            };
            let e = self.int()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::Parse { offset: at, message: "exponent too large".into() })?;
            return base.pow(if neg { -e } else { e }, at);
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let at = self.pos;
        let v: i64 = self
            .int()?
            .try_into()
            .map_err(|_| Error::Parse { offset: at, message: "index too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn atom<T: ExprTarget>(&mut self) -> Result<T> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power::<T>()?.neg())
            }
            Some(c) if c.is_ascii_digit() => Ok(T::from_int(self.int()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                if self.eat(b'[') {
                    let mut idx = vec![self.signed_int()?];
                    while self.eat(b',') {
                        idx.push(self.signed_int()?);
                    }
                    self.expect(b']')?;
                    T::ident(&name, Some(idx), start)
                } else if name == "q" {
                    Ok(T::q())
                } else {
                    T::ident(&name, None, start)
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

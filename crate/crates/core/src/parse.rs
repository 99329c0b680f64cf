//! Hand-written recursive-descent parsing for scalar and tensor expressions.
//!
//! Scalar grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-'? factor ('*'? factor)*
//! factor := int ('/' int)? | 'i' | 's+' ('^' int)? | 's-' ('^' int)? | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn peek2(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().nth(1)
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected digits");
        }
        let v = self.rest()[..len].parse().expect("ascii digits");
        self.pos += len;
        Ok(v)
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat('^') {
            return Ok(1);
        }
        let d = self.digits()?;
        u32::try_from(d).or_else(|_| self.err("exponent too large"))
    }

    /// An identifier such as `dX` or `dAhatDag`.
    pub(crate) fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|(k, c)| c.is_alphabetic() || *c == '_' || (*k > 0 && c.is_alphanumeric()))
            .map(|(_, c)| c.len_utf8())
            .sum::<usize>();
        if len == 0 {
            return self.err("expected a differential label");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    /// Whether the next token starts a scalar factor.
    pub(crate) fn at_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some('i') => !matches!(self.peek2(), Some(c) if c.is_alphanumeric() || c == '_'),
            Some('s') => matches!(self.peek2(), Some('+') | Some('-')),
            _ => false,
        }
    }

    pub(crate) fn factor(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.digits()?;
                let q = if self.eat('/') { self.digits()? } else { BigInt::one() };
                if q.is_zero() {
                    return self.err("zero denominator");
                }
                Ok(Scalar::from_rational(BigRational::new(p, q)))
            }
            Some('(') => {
                self.bump();
                let v = self.scalar_expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('i') if self.at_factor() => {
                self.bump();
                Ok(Scalar::i())
            }
            Some('s') if self.at_factor() => {
                self.bump();
                let plus = self.bump() == Some('+');
                let e = self.exponent()?;
                let base = if plus { Scalar::sigma_plus() } else { Scalar::sigma_minus() };
                Ok(base.pow(e))
            }
            _ => self.err("expected a number, `i`, `s+`, `s-` or `(`"),
        }
    }

    /// Product of factors with optional `*` separators. Stops before `{`.
    pub(crate) fn factors(&mut self) -> Result<Option<Scalar>> {
        let mut acc: Option<Scalar> = None;
        loop {
            if self.at_factor() {
                let f = self.factor()?;
                acc = Some(match acc {
                    Some(a) => &a * &f,
                    None => f,
                });
            } else if acc.is_some() && self.peek() == Some('*') {
                self.bump();
                if !self.at_factor() {
                    // `2*{...}` hands the brace back to the caller.
                    break;
                }
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn scalar_term(&mut self) -> Result<Scalar> {
        let neg = self.eat('-');
        let v = match self.factors()? {
            Some(v) => v,
            None => return self.err("expected a scalar factor"),
        };
        Ok(if neg { -v } else { v })
    }

    pub(crate) fn scalar_expr(&mut self) -> Result<Scalar> {
        let mut acc = self.scalar_term()?;
        loop {
            if self.eat('+') {
                acc += &self.scalar_term()?;
            } else if self.peek() == Some('-') {
                self.bump();
                acc -= &self.scalar_term()?;
            } else {
                return Ok(acc);
            }
        }
    }
}

/// Parses a Gaussian rational such as `-1/2`, `3 i` or `(1 - 2/3 i)`.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let v: Scalar = s.parse()?;
    v.as_constant()
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("`{s}` depends on s+ or s-") })
}

//! Recursive-descent reader for the polynomial text format.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := int ('/' nat)? | var | '(' expr ')'
//! var    := ('X'|'Y'|'x'|'y') nat
//! ```
//!
//! Whitespace is ignored and there is no implicit multiplication. Printing
//! ([`Polynomial`]'s `Display`) emits the flat sub-language without
//! parentheses, so every printed polynomial parses back to itself.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Exponent, Family, Polynomial, Rational};
use crate::error::{Error, Result};

/// Parses `text` as a polynomial in variables `0..=n` of `family`.
/// The result is in the standard convention.
pub fn parse_poly(text: &str, n: usize, family: Family) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars: n + 1,
        family,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses `p`, `-p` or `p/q` with integer `p` and positive `q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::MalformedRational(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) if d.starts_with(['+', '-']) => return Err(bad()),
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    family: Family,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
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

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate_first = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let k = self.nat()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.digits();
                let mut text = num.to_string();
                if self.eat(b'/') {
                    self.skip_ws();
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return Err(Error::MalformedRational(
                            String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                        ));
                    }
                    text.push('/');
                    text.push_str(self.digits());
                }
                let c = parse_rational(&text)?;
                Ok(Polynomial::constant(self.nvars, self.family, c))
            }
            Some(c @ (b'X' | b'Y' | b'x' | b'y')) => {
                let fam = if c.to_ascii_uppercase() == b'X' { Family::X } else { Family::Y };
                let at = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected a variable index"));
                }
                let idx = self.nat()?;
                if fam != self.family {
                    return Err(Error::FamilyMismatch(format!(
                        "variable {}{} at byte {} in a {} polynomial",
                        fam.letter(),
                        idx,
                        at,
                        self.family.letter()
                    )));
                }
                if idx >= self.nvars {
                    return Err(Error::VariableOutOfRange {
                        index: idx,
                        n: self.nvars - 1,
                    });
                }
                Ok(Polynomial::monomial(
                    self.nvars,
                    self.family,
                    Exponent::unit(self.nvars, idx),
                    Rational::from_integer(1.into()),
                ))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn nat(&mut self) -> Result<usize> {
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(self.error("expected a natural number"));
        }
        self.digits().parse().map_err(|_| self.error("number too large"))
    }
}

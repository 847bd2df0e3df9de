//! Text grammar for polynomials and monomials.
//!
//! ```text
//! polynomial := ['+'|'-'] term (('+'|'-') term)*
//! term       := coeff ['*' factors] | factors
//! coeff      := integer ['/' integer]
//! factors    := var ['^' integer] ('*' var ['^' integer])*
//! var        := 'x' index        (or a bare 'x' in one variable)
//! ```

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::scalar::{Field, Scalar};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.text[start..self.pos]).unwrap())
    }

    /// Digits immediately following the cursor, without skipping whitespace.
    fn adjacent_digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.text[start..self.pos]).unwrap())
    }
}

fn parse_term(cur: &mut Cursor<'_>, arity: usize, field: Field) -> Result<(Monomial, Scalar)> {
    let mut exps: SmallVec<[u16; 8]> = SmallVec::from_elem(0, arity);
    let mut coeff = field.one();
    if let Some(num) = cur.digits() {
        let num: BigInt = num.parse().unwrap();
        let den = if cur.eat(b'/') {
            match cur.digits() {
                Some(d) => d.parse().unwrap(),
                None => return cur.error("expected denominator after `/`"),
            }
        } else {
            BigInt::one()
        };
        coeff = field.from_ratio(&num, &den).map_err(|e| Error::Parse {
            column: cur.pos + 1,
            message: e.to_string(),
        })?;
        if !cur.eat(b'*') && cur.peek() != Some(b'x') {
            return Ok((Monomial::new(exps), coeff));
        }
    }

    loop {
        if cur.peek() != Some(b'x') {
            return cur.error("expected a variable");
        }
        cur.pos += 1;
        let index = match cur.adjacent_digits() {
            Some(d) => {
                let i: usize = d.parse().map_err(|_| Error::Parse {
                    column: cur.pos,
                    message: format!("bad variable index `{d}`"),
                })?;
                if i == 0 || i > arity {
                    return cur.error(format!("variable x{i} outside x1..x{arity}"));
                }
                i - 1
            }
            None if arity == 1 => 0,
            None => return cur.error("variable needs an index"),
        };
        let power: u16 = if cur.eat(b'^') {
            match cur.digits() {
                Some(d) => d.parse().map_err(|_| Error::Parse {
                    column: cur.pos,
                    message: format!("exponent `{d}` too large"),
                })?,
                None => return cur.error("expected exponent after `^`"),
            }
        } else {
            1
        };
        exps[index] = exps[index].checked_add(power).ok_or_else(|| Error::Parse {
            column: cur.pos,
            message: "exponent overflow".into(),
        })?;
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

/// Parses one polynomial in `arity` variables over `field`.
pub fn parse_polynomial(text: &str, arity: usize, field: Field) -> Result<Polynomial> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut negate = false;
    if cur.eat(b'-') {
        negate = true;
    } else {
        cur.eat(b'+');
    }
    loop {
        let (m, c) = parse_term(&mut cur, arity, field)?;
        terms.push((m, if negate { -c } else { c }));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negate = true;
            }
            Some(other) => return cur.error(format!("unexpected `{}`", other as char)),
        }
    }
    Polynomial::from_terms(arity, field, terms)
}

/// Parses a bare monomial such as `x1*x2^3` or `1`.
pub fn parse_monomial(text: &str, arity: usize) -> Result<Monomial> {
    let p = parse_polynomial(text, arity, Field::Rational)?;
    match p.terms() {
        [(m, c)] if c.is_one() => Ok(m.clone()),
        _ => Err(Error::Parse {
            column: 1,
            message: format!("`{}` is not a monomial", text.trim()),
        }),
    }
}

/// Parses a comma-separated monomial list.
pub fn parse_monomial_list(text: &str, arity: usize) -> Result<Vec<Monomial>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_monomial(s, arity))
        .collect()
}

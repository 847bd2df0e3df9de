//! Sparse polynomials with exact coefficients.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ordering::MonomialOrder;
use crate::scalar::{Field, Scalar};

/// A polynomial stored as terms sorted strictly descending by the native
/// monomial order, with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    field: Field,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(arity: usize, field: Field) -> Self {
        Polynomial {
            arity,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(arity: usize, value: Scalar) -> Self {
        Self::term(Monomial::one(arity), value)
    }

    pub fn term(monomial: Monomial, coefficient: Scalar) -> Self {
        let arity = monomial.arity();
        let field = coefficient.field();
        let terms = if coefficient.is_zero() {
            Vec::new()
        } else {
            vec![(monomial, coefficient)]
        };
        Polynomial {
            arity,
            field,
            terms,
        }
    }

    /// The polynomial `1 * monomial`.
    pub fn monomial(monomial: Monomial, field: Field) -> Self {
        Self::term(monomial, field.one())
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(
        arity: usize,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut raw: Vec<(Monomial, Scalar)> = Vec::new();
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: m.arity(),
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: c.field().to_string(),
                });
            }
            raw.push((m, c));
        }
        raw.sort_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, Scalar)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((last, acc)) if *last == m => *acc = &*acc + &c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial {
            arity,
            field,
            terms,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending native order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        Ok(self.combine(&self.field.one(), other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        Ok(self.combine(&-self.field.one(), other))
    }

    /// `self + factor * other`, merging sorted term lists.
    pub(crate) fn combine(&self, factor: &Scalar, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match a.cmp(b) {
                Ordering::Greater => {
                    terms.push((a.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((b.clone(), factor * cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + &(factor * cb);
                    if !c.is_zero() {
                        terms.push((a.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), factor * c)),
        );
        Polynomial {
            arity: self.arity,
            field: self.field,
            terms,
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.arity, self.field);
        }
        Polynomial {
            arity: self.arity,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// `monomial * self`; monomial multiplication preserves the term order.
    pub fn mul_monomial(&self, monomial: &Monomial) -> Polynomial {
        Polynomial {
            arity: self.arity,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(monomial), c.clone()))
                .collect(),
        }
    }

    /// `x_{index+1} * self`.
    pub fn mul_var(&self, index: usize) -> Polynomial {
        Polynomial {
            arity: self.arity,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul_var(index), c.clone()))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut acc = Polynomial::zero(self.arity, self.field);
        for (m, c) in &other.terms {
            acc = acc.combine(c, &self.mul_monomial(m));
        }
        Ok(acc)
    }

    /// The maximal term under `order`, with its coefficient.
    pub fn leading(&self, order: &impl MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        if order.is_native() {
            return self.terms.first().map(|(m, c)| (m, c));
        }
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn leading_term(&self, order: &impl MonomialOrder) -> Result<Monomial> {
        self.leading(order)
            .map(|(m, _)| m.clone())
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coefficient(&self, order: &impl MonomialOrder) -> Result<Scalar> {
        self.leading(order)
            .map(|(_, c)| c.clone())
            .ok_or(Error::ZeroPolynomial)
    }

    /// Sum of the terms of maximal total degree.
    pub fn leading_form(&self) -> Result<Polynomial> {
        let top = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial {
            arity: self.arity,
            field: self.field,
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.degree() == top)
                .cloned()
                .collect(),
        })
    }

    /// Scales so that the leading coefficient under `order` is one.
    pub fn monic(&self, order: &impl MonomialOrder) -> Result<Polynomial> {
        let lc = self.leading_coefficient(order)?;
        Ok(self.scale(&lc.inv().expect("nonzero leading coefficient")))
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            arity: self.arity,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .cloned()
                .collect(),
        }
    }
}

/// Leading term of `p` under `order`; fails on the zero polynomial.
pub fn leading_term(p: &Polynomial, order: &impl MonomialOrder) -> Result<Monomial> {
    p.leading_term(order)
}

/// Leading form of `p`; fails on the zero polynomial.
pub fn leading_form(p: &Polynomial) -> Result<Polynomial> {
    p.leading_form()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

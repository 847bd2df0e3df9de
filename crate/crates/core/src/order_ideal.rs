//! Finite factor-closed monomial sets and their borders.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};

/// A finite set of monomials closed under taking divisors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderIdeal {
    arity: usize,
    elements: BTreeSet<Monomial>,
}

/// Whether `set` is closed under divisors. The empty set qualifies.
pub fn is_order_ideal<'a>(set: impl IntoIterator<Item = &'a Monomial>) -> bool {
    let set: BTreeSet<&Monomial> = set.into_iter().collect();
    missing_divisor(&set).is_none()
}

fn missing_divisor(set: &BTreeSet<&Monomial>) -> Option<Monomial> {
    // Checking the immediate divisors suffices by induction on the degree.
    set.iter()
        .find(|t| t.immediate_divisors().any(|d| !set.contains(&d)))
        .map(|t| (*t).clone())
}

impl OrderIdeal {
    pub fn new(arity: usize, elements: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let elements: BTreeSet<Monomial> = elements.into_iter().collect();
        if let Some(m) = elements.iter().find(|m| m.arity() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: m.arity(),
            });
        }
        let refs: BTreeSet<&Monomial> = elements.iter().collect();
        if let Some(t) = missing_divisor(&refs) {
            return Err(Error::NotOrderIdeal(t.to_string()));
        }
        Ok(OrderIdeal { arity, elements })
    }

    pub fn empty(arity: usize) -> Self {
        OrderIdeal {
            arity,
            elements: BTreeSet::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.elements.contains(m)
    }

    /// Elements in ascending native order (`1` first).
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.elements.iter()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.elements.iter().map(Monomial::degree).max()
    }

    /// `O^{=i}`.
    pub fn of_degree(&self, degree: u32) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter(move |m| m.degree() == degree)
    }

    /// `∂O = {x_j t : t ∈ O} \ O`, and `{1}` for the empty ideal. Ascending.
    pub fn border(&self) -> Vec<Monomial> {
        if self.elements.is_empty() {
            return vec![Monomial::one(self.arity)];
        }
        let border: BTreeSet<Monomial> = self
            .elements
            .iter()
            .flat_map(|t| (0..self.arity).map(move |j| t.mul_var(j)))
            .filter(|m| !self.elements.contains(m))
            .collect();
        border.into_iter().collect()
    }
}

/// Free-function form of [`OrderIdeal::border`].
pub fn border(o: &OrderIdeal) -> Vec<Monomial> {
    o.border()
}

/// Checks `|O^{=i}| = |T^n_{=i}| - dim(I^{<=i} / I^{<=i-1})` for every degree
/// `i` covered by `filtration` (`filtration[i]` is that quotient dimension).
/// The data must reach at least the top degree of `O`.
pub fn is_degree_compatible(o: &OrderIdeal, filtration: &[usize]) -> Result<bool> {
    let needed = o.max_degree().map_or(0, |d| d as usize + 1);
    if filtration.len() < needed {
        return Err(Error::Precondition(format!(
            "filtration covers degrees < {}, order ideal reaches degree {}",
            filtration.len(),
            needed.saturating_sub(1)
        )));
    }
    Ok(filtration.iter().enumerate().all(|(i, &layer)| {
        let all = monomials_of_degree(o.arity(), i as u32).len();
        all >= layer && o.of_degree(i as u32).count() == all - layer
    }))
}

impl fmt::Display for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_monomial_list;

    fn set(s: &str, n: usize) -> Vec<Monomial> {
        parse_monomial_list(s, n).unwrap()
    }

    fn oi(s: &str, n: usize) -> OrderIdeal {
        OrderIdeal::new(n, set(s, n)).unwrap()
    }

    #[test]
    fn factor_closed_examples() {
        assert!(is_order_ideal(&set("1, x1, x2", 2)));
        assert!(!is_order_ideal(&set("1, x1*x2", 2)));
        assert!(is_order_ideal(&Vec::<Monomial>::new()));
        assert!(matches!(
            OrderIdeal::new(2, set("1, x1*x2", 2)),
            Err(Error::NotOrderIdeal(_))
        ));
    }

    #[test]
    fn border_examples() {
        let empty = OrderIdeal::empty(2);
        assert_eq!(empty.border(), set("1", 2));
        assert_eq!(oi("1", 2).border(), set("x2, x1", 2));
        let b: BTreeSet<_> = oi("1, x1", 2).border().into_iter().collect();
        let expected: BTreeSet<_> = set("x2, x1^2, x1*x2", 2).into_iter().collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn degree_compatibility() {
        let o = oi("1, x", 1);
        assert!(is_degree_compatible(&o, &[0, 0, 1]).unwrap());
        assert!(!is_degree_compatible(&OrderIdeal::empty(1), &[0]).unwrap());
        assert!(is_degree_compatible(&o, &[0]).is_err());
    }
}

//! Term orderings and the generic monomial-order abstraction used by elimination.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Anything that totally orders monomials. Elimination routines pick the
/// maximal term of a polynomial under this order as its pivot.
pub trait MonomialOrder: Sync {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering;

    /// True when the order coincides with `Monomial`'s own `Ord`, in which
    /// case the first stored term of a polynomial is its maximum.
    fn is_native(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    DegRevLex,
    DegLex,
    Lex,
}

/// A term ordering together with a variable priority. `permutation[0]` is
/// the largest variable; the identity gives `x1 > x2 > ... > xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrdering {
    kind: OrderingKind,
    permutation: Vec<usize>,
}

impl TermOrdering {
    pub fn new(kind: OrderingKind, permutation: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; permutation.len()];
        for &i in &permutation {
            if i >= seen.len() || seen[i] {
                return Err(Error::Precondition(format!(
                    "{permutation:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(TermOrdering { kind, permutation })
    }

    pub fn degrevlex(arity: usize) -> Self {
        TermOrdering {
            kind: OrderingKind::DegRevLex,
            permutation: (0..arity).collect(),
        }
    }

    pub fn deglex(arity: usize) -> Self {
        TermOrdering {
            kind: OrderingKind::DegLex,
            permutation: (0..arity).collect(),
        }
    }

    pub fn lex(arity: usize) -> Self {
        TermOrdering {
            kind: OrderingKind::Lex,
            permutation: (0..arity).collect(),
        }
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.permutation.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn is_degree_compatible(&self) -> bool {
        self.kind != OrderingKind::Lex
    }

    fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

impl MonomialOrder for TermOrdering {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderingKind::DegRevLex => a.cmp_degrevlex_perm(b, &self.permutation),
            OrderingKind::DegLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.cmp_lex_perm(b, &self.permutation)),
            OrderingKind::Lex => a.cmp_lex_perm(b, &self.permutation),
        }
    }

    fn is_native(&self) -> bool {
        self.kind == OrderingKind::DegRevLex && self.is_identity()
    }
}

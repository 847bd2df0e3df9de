//! Monomials `x^m` as exponent vectors.
//!
//! The `Ord` impl is degree-reverse-lexicographic with `x1 > x2 > ... > xn`.
//! Sorting descending by it gives the global column order used everywhere
//! (higher degree left, then degrevlex within a degree).

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exponents: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: impl Into<Exponents>) -> Self {
        let exponents = exponents.into();
        let degree = exponents.iter().map(|&e| e as u32).sum();
        Monomial { exponents, degree }
    }

    /// The monomial `1` in `arity` variables.
    pub fn one(arity: usize) -> Self {
        Monomial {
            exponents: SmallVec::from_elem(0, arity),
            degree: 0,
        }
    }

    /// The variable `x_{index+1}` (zero-based `index`).
    pub fn var(arity: usize, index: usize) -> Self {
        let mut m = Self::one(arity);
        m.exponents[index] = 1;
        m.degree = 1;
        m
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn check_arity(&self, other: &Monomial) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(())
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_arity(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `x_{index+1} * self`.
    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut m = self.clone();
        m.exponents[index] += 1;
        m.degree += 1;
        m
    }

    /// `self / x_{index+1}`, if that divides.
    pub fn div_var(&self, index: usize) -> Option<Monomial> {
        if self.exponents[index] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exponents[index] -= 1;
        m.degree -= 1;
        Some(m)
    }

    /// The monomials `self / x_i` for every variable occurring in `self`.
    pub fn immediate_divisors(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.arity()).filter_map(|i| self.div_var(i))
    }

    /// Degrevlex comparison with a variable priority: `perm[0]` is the
    /// largest variable.
    pub(crate) fn cmp_degrevlex_perm(&self, other: &Monomial, perm: &[usize]) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for &i in perm.iter().rev() {
                let (a, b) = (self.exponents[i], other.exponents[i]);
                if a != b {
                    return b.cmp(&a);
                }
            }
            Ordering::Equal
        })
    }

    pub(crate) fn cmp_lex_perm(&self, other: &Monomial, perm: &[usize]) -> Ordering {
        for &i in perm {
            let (a, b) = (self.exponents[i], other.exponents[i]);
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exponents.iter().zip(other.exponents.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if self.arity() == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x{}", i + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Free-function form of [`Monomial::divides`].
pub fn divides(m1: &Monomial, m2: &Monomial) -> Result<bool> {
    m1.divides(m2)
}

/// All monomials in `arity` variables of degree exactly `degree`, descending.
pub fn monomials_of_degree(arity: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; arity];
    fill(&mut current, 0, degree, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(current: &mut [u16], index: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if index + 1 == current.len() {
        current[index] = remaining as u16;
        out.push(Monomial::new(SmallVec::from_slice(current)));
        current[index] = 0;
        return;
    }
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial::new(SmallVec::new()));
        }
        return;
    }
    for e in (0..=remaining).rev() {
        current[index] = e as u16;
        fill(current, index + 1, remaining - e, out);
    }
    current[index] = 0;
}

/// `T^n_{<=d}` in the global order: degree descending, degrevlex descending
/// within each degree. Has `C(n+d, d)` elements.
pub fn monomials_up_to(arity: usize, degree: u32) -> Vec<Monomial> {
    (0..=degree)
        .rev()
        .flat_map(|k| monomials_of_degree(arity, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(SmallVec::from_slice(e))
    }

    #[test]
    fn divides_examples() {
        assert!(divides(&m(&[0, 0]), &m(&[1, 1])).unwrap());
        assert!(!divides(&m(&[2, 0]), &m(&[1, 1])).unwrap());
        assert!(divides(&m(&[1, 1]), &m(&[2, 3])).unwrap());
        assert!(divides(&m(&[1]), &m(&[1, 1])).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(monomials_up_to(1, 2), vec![m(&[2]), m(&[1]), m(&[0])]);
        assert_eq!(
            monomials_up_to(2, 1),
            vec![m(&[1, 0]), m(&[0, 1]), m(&[0, 0])]
        );
        // C(7, 2)
        assert_eq!(monomials_up_to(2, 5).len(), 21);
        assert_eq!(monomials_up_to(3, 4).len(), 35);
    }

    #[test]
    fn degrevlex_within_degree() {
        // x1^2 > x1 x2 > x2^2 > x1 x3 ... in three variables
        let deg2 = monomials_of_degree(3, 2);
        let shown: Vec<String> = deg2.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2"]);
    }

    #[test]
    fn display() {
        assert_eq!(m(&[0, 0]).to_string(), "1");
        assert_eq!(m(&[2]).to_string(), "x^2");
        assert_eq!(m(&[1, 3]).to_string(), "x1*x2^3");
    }
}

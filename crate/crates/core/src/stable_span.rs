//! Neighborhood extensions and stable spans inside degree-truncated universes.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::monomial::{monomials_up_to, Monomial};
use crate::ordering::TermOrdering;
use crate::polynomial::Polynomial;

/// The monomials of degree at most `degree` in `arity` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    pub arity: usize,
    pub degree: u32,
}

impl Universe {
    pub fn new(arity: usize, degree: u32) -> Self {
        Universe { arity, degree }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.arity() == self.arity && m.degree() <= self.degree
    }

    /// Degree-descending, degrevlex-descending within each degree.
    pub fn monomials(&self) -> Vec<Monomial> {
        monomials_up_to(self.arity, self.degree)
    }

    pub fn size(&self) -> usize {
        binomial(self.arity + self.degree as usize, self.arity)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `W ∪ x1 W ∪ ... ∪ xn W` with duplicates removed, first occurrence kept.
pub fn neighborhood_extension(w: &[Polynomial]) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let products = w.iter().cloned().chain(
        w.iter()
            .flat_map(|p| (0..p.arity()).map(move |j| p.mul_var(j))),
    );
    for p in products {
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

fn check_universe(f: &[Polynomial], d: u32) -> Result<()> {
    for p in f {
        if let Some(deg) = p.degree() {
            if deg > d {
                return Err(Error::DegreeExceedsUniverse {
                    degree: deg,
                    bound: d,
                });
            }
        }
    }
    if let Some(first) = f.first() {
        if let Some(p) = f.iter().find(|p| p.arity() != first.arity()) {
            return Err(Error::ArityMismatch {
                expected: first.arity(),
                found: p.arity(),
            });
        }
    }
    Ok(())
}

/// Basis of the smallest space containing `f` that is closed under
/// multiplication by variables as long as the degree stays at most `d`.
///
/// Rows are in degrevlex echelon form with unit leading coefficients. Only
/// newly found rows are multiplied out; pivots of degree `d + 1` are kept
/// around as reducers, so the result spans the same space as repeatedly
/// extending the whole basis.
pub fn l_stable_span(f: &[Polynomial], d: u32) -> Result<Vec<Polynomial>> {
    check_universe(f, d)?;
    let Some(first) = f.first() else {
        return Ok(Vec::new());
    };
    let arity = first.arity();
    let limit = Universe::new(arity, d).size();
    let mut ech = Echelon::new(TermOrdering::degrevlex(arity));
    let mut inside = Vec::new();
    let mut queue = VecDeque::new();
    for p in f {
        if let Some(i) = ech.insert(p.clone()) {
            inside.push(i);
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for j in 0..arity {
            let ext = ech.rows()[i].mul_var(j);
            if let Some(new) = ech.insert(ext) {
                if ech.rows()[new].degree().unwrap() <= d {
                    inside.push(new);
                    queue.push_back(new);
                    assert!(inside.len() <= limit, "stable span outgrew its universe");
                }
            }
        }
    }
    let rows = ech.into_rows();
    let mut keep = vec![false; rows.len()];
    for i in inside {
        keep[i] = true;
    }
    Ok(rows
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect())
}

/// Whether the degree-`d` part of `span(f⁺)` is already `span(f)`.
pub fn is_l_stabilized(f: &[Polynomial], d: u32) -> Result<bool> {
    check_universe(f, d)?;
    let Some(first) = f.first() else {
        return Ok(true);
    };
    let arity = first.arity();
    let mut ech = Echelon::new(TermOrdering::degrevlex(arity));
    for p in f {
        ech.insert(p.clone());
    }
    let base = ech.rows().to_vec();
    for p in &base {
        for j in 0..arity {
            if let Some(new) = ech.insert(p.mul_var(j)) {
                if ech.rows()[new].degree().unwrap() <= d {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::scalar::Field;

    fn polys(list: &[&str], n: usize) -> Vec<Polynomial> {
        list.iter()
            .map(|s| parse_polynomial(s, n, Field::Rational).unwrap())
            .collect()
    }

    fn same_span(a: &[Polynomial], b: &[Polynomial]) -> bool {
        let n = a.iter().chain(b).next().map_or(1, Polynomial::arity);
        let mut ea = Echelon::new(TermOrdering::degrevlex(n));
        let mut eb = Echelon::new(TermOrdering::degrevlex(n));
        a.iter().for_each(|p| {
            ea.insert(p.clone());
        });
        b.iter().for_each(|p| {
            eb.insert(p.clone());
        });
        a.iter().all(|p| eb.contains(p)) && b.iter().all(|p| ea.contains(p))
    }

    #[test]
    fn extension_examples() {
        let ext = neighborhood_extension(&polys(&["x1"], 2));
        assert_eq!(ext, polys(&["x1", "x1^2", "x1*x2"], 2));
        assert!(neighborhood_extension(&[]).is_empty());
        assert_eq!(
            neighborhood_extension(&polys(&["x^2 - 1"], 1)),
            polys(&["x^2 - 1", "x^3 - x"], 1)
        );
    }

    #[test]
    fn stable_span_examples() {
        let s = l_stable_span(&polys(&["x^2 - 1"], 1), 2).unwrap();
        assert!(same_span(&s, &polys(&["x^2 - 1"], 1)));
        let s = l_stable_span(&polys(&["x - 1"], 1), 2).unwrap();
        assert!(same_span(&s, &polys(&["x - 1", "x^2 - x"], 1)));
        assert!(l_stable_span(&[], 3).unwrap().is_empty());
        assert!(matches!(
            l_stable_span(&polys(&["x^3"], 1), 2),
            Err(Error::DegreeExceedsUniverse {
                degree: 3,
                bound: 2
            })
        ));
    }

    #[test]
    fn stabilized_examples() {
        assert!(is_l_stabilized(&polys(&["x^2 - 1"], 1), 2).unwrap());
        assert!(!is_l_stabilized(&polys(&["x - 1"], 1), 2).unwrap());
        assert!(is_l_stabilized(&[], 2).unwrap());
    }

    #[test]
    fn overflow_pivots_matter() {
        // x1^2 - x2 and x1*x2 - 1 meet in degree 3: x2*(x1^2 - x2) - x1*(x1*x2 - 1)
        // = x1 - x2^2, which a single-row view of degree <= 2 would miss.
        let f = polys(&["x1^2 - x2", "x1*x2 - 1"], 2);
        let s = l_stable_span(&f, 2).unwrap();
        let probe = polys(&["x1 - x2^2"], 2);
        let mut e = Echelon::new(TermOrdering::degrevlex(2));
        s.iter().for_each(|p| {
            e.insert(p.clone());
        });
        assert!(e.contains(&probe[0]));
        assert!(is_l_stabilized(&s, 2).unwrap());
    }

    #[test]
    fn universe_size() {
        assert_eq!(Universe::new(2, 5).size(), 21);
        assert_eq!(Universe::new(3, 0).size(), 1);
        assert_eq!(Universe::new(2, 5).monomials().len(), 21);
    }
}

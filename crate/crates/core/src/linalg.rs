//! Exact row reduction of polynomial sets viewed as coefficient matrices.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ordering::{MonomialOrder, TermOrdering};
use crate::polynomial::Polynomial;

impl<O: MonomialOrder + ?Sized> MonomialOrder for &O {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        (**self).compare(a, b)
    }

    fn is_native(&self) -> bool {
        (**self).is_native()
    }
}

/// An explicit left-to-right column order; the left-most column is the
/// greatest monomial. Comparing a monomial outside the list panics.
#[derive(Clone, Debug)]
pub struct ColumnOrder {
    columns: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

impl ColumnOrder {
    pub fn new(columns: Vec<Monomial>) -> Result<Self> {
        let mut position = HashMap::with_capacity(columns.len());
        for (i, m) in columns.iter().enumerate() {
            if position.insert(m.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate column {m}")));
            }
        }
        Ok(ColumnOrder { columns, position })
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.position.contains_key(m)
    }
}

impl MonomialOrder for ColumnOrder {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let pa = self.position[a];
        let pb = self.position[b];
        pb.cmp(&pa)
    }
}

/// Rows with pairwise distinct, unit-coefficient pivots under `order`,
/// plus a lookup from pivot monomial to row.
#[derive(Clone, Debug)]
pub struct Echelon<O> {
    order: O,
    rows: Vec<Polynomial>,
    pivots: HashMap<Monomial, usize>,
}

impl<O: MonomialOrder> Echelon<O> {
    pub fn new(order: O) -> Self {
        Echelon {
            order,
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    /// Wraps rows that already satisfy the echelon invariant, checking it.
    pub fn from_rows(order: O, rows: Vec<Polynomial>) -> Result<Self> {
        let mut pivots = HashMap::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let (lt, lc) = row.leading(&order).ok_or(Error::Precondition(
                "zero polynomial among the pivot rows".into(),
            ))?;
            if !lc.is_one() {
                return Err(Error::Precondition(format!(
                    "pivot row {row} has leading coefficient {lc}"
                )));
            }
            if pivots.insert(lt.clone(), i).is_some() {
                return Err(Error::Precondition(format!("repeated leading term {lt}")));
            }
        }
        Ok(Echelon {
            order,
            rows,
            pivots,
        })
    }

    pub fn order(&self) -> &O {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Polynomial> {
        self.rows
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.pivots.contains_key(m)
    }

    pub fn pivot_row(&self, m: &Monomial) -> Option<&Polynomial> {
        self.pivots.get(m).map(|&i| &self.rows[i])
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = &Monomial> {
        self.pivots.keys()
    }

    /// Cancels leading terms against pivots until the leading term is new
    /// or the polynomial vanishes.
    pub fn reduce(&self, mut f: Polynomial) -> Polynomial {
        loop {
            let (row, lc) = match f.leading(&self.order) {
                None => return f,
                Some((lt, lc)) => match self.pivots.get(lt) {
                    None => return f,
                    Some(&i) => (i, lc.clone()),
                },
            };
            f = f.combine(&-lc, &self.rows[row]);
        }
    }

    /// Reduces `f` and, if something is left, appends it normalized.
    /// Returns the index of the new row.
    pub fn insert(&mut self, f: Polynomial) -> Option<usize> {
        let r = self.reduce(f);
        let (lt, lc) = r.leading(&self.order)?;
        let lt = lt.clone();
        let normalized = if lc.is_one() {
            r
        } else {
            r.scale(&lc.inv().expect("nonzero"))
        };
        let i = self.rows.len();
        self.pivots.insert(lt, i);
        self.rows.push(normalized);
        Some(i)
    }

    /// Whether `f` lies in the span of the rows.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f.clone()).is_zero()
    }

    /// Back-substitutes so that no pivot monomial occurs in any other row,
    /// then sorts rows by pivot, greatest first.
    pub fn interreduce(&mut self) {
        let order = &self.order;
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        let lts: Vec<Monomial> = self
            .rows
            .iter()
            .map(|r| r.leading(order).unwrap().0.clone())
            .collect();
        idx.sort_by(|&a, &b| order.compare(&lts[a], &lts[b]));

        let mut done: HashMap<Monomial, usize> = HashMap::with_capacity(idx.len());
        for &i in &idx {
            let lt = &lts[i];
            loop {
                let hit = self.rows[i]
                    .terms()
                    .iter()
                    .find(|(m, _)| m != lt && done.contains_key(m))
                    .map(|(m, c)| (done[m], c.clone()));
                match hit {
                    Some((j, c)) => {
                        let reduced = self.rows[i].combine(&-c, &self.rows[j]);
                        self.rows[i] = reduced;
                    }
                    None => break,
                }
            }
            done.insert(lt.clone(), i);
        }

        idx.reverse();
        let mut old: Vec<Option<Polynomial>> = std::mem::take(&mut self.rows)
            .into_iter()
            .map(Some)
            .collect();
        self.rows = idx.iter().map(|&i| old[i].take().unwrap()).collect();
        self.pivots = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.leading(order).unwrap().0.clone(), i))
            .collect();
    }
}

fn check_uniform<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<()> {
    let mut shape = None;
    for p in polys {
        let s = (p.arity(), p.field());
        match shape {
            None => shape = Some(s),
            Some((n, f)) if (n, f) != s => {
                if n != s.0 {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        found: s.0,
                    });
                }
                return Err(Error::FieldMismatch {
                    left: f.to_string(),
                    right: s.1.to_string(),
                });
            }
            _ => {}
        }
    }
    Ok(())
}

/// Extends the basis `v` (distinct leading terms, unit leading coefficients)
/// by the new pivots needed to span `v ∪ g`. `g` is processed first in,
/// first out; zero remainders are discarded.
pub fn gauss_el<O: MonomialOrder>(
    v: &[Polynomial],
    g: &[Polynomial],
    order: O,
) -> Result<Vec<Polynomial>> {
    check_uniform(v.iter().chain(g))?;
    let mut ech = Echelon::from_rows(order, v.to_vec())?;
    for f in g {
        ech.insert(f.clone());
    }
    let mut rows = ech.into_rows();
    Ok(rows.split_off(v.len()))
}

/// Polynomials as rows of a matrix with an explicit column list.
#[derive(Clone, Debug)]
pub struct CoeffMatrix {
    rows: Vec<Polynomial>,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl CoeffMatrix {
    pub fn new(rows: Vec<Polynomial>, columns: Vec<Monomial>) -> Result<Self> {
        let mut index = HashMap::with_capacity(columns.len());
        for (i, m) in columns.iter().enumerate() {
            if index.insert(m.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate column {m}")));
            }
        }
        for r in &rows {
            if let Some(m) = r.support().find(|m| !index.contains_key(*m)) {
                return Err(Error::NotInUniverse(m.to_string()));
            }
        }
        Ok(CoeffMatrix {
            rows,
            columns,
            index,
        })
    }

    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn has_column(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    /// Coefficient of column `m` in row `r`, or `None` when it is zero.
    pub fn entry(&self, r: usize, m: &Monomial) -> Option<&crate::scalar::Scalar> {
        self.rows[r].coefficient(m)
    }

    /// Rank of the submatrix on the given columns.
    pub fn rank(&self, cols: &[Monomial]) -> Result<usize> {
        rank(self, cols)
    }
}

/// Exact rank of the column-restricted submatrix of `matrix`.
pub fn rank(matrix: &CoeffMatrix, cols: &[Monomial]) -> Result<usize> {
    if let Some(m) = cols.iter().find(|m| !matrix.has_column(m)) {
        return Err(Error::NotInUniverse(m.to_string()));
    }
    if cols.is_empty() || matrix.rows.is_empty() {
        return Ok(0);
    }
    let keep: HashSet<&Monomial> = cols.iter().collect();
    let restricted: Vec<Polynomial> = matrix
        .rows
        .iter()
        .map(|r| r.restrict(|m| keep.contains(m)))
        .collect();
    let arity = matrix.rows[0].arity();
    Ok(gauss_el(&[], &restricted, TermOrdering::degrevlex(arity))?.len())
}

/// Brings `m` to canonical form: a fully interreduced basis of its span
/// whose pivots are degrevlex-maximal among maximal-degree terms. Rows
/// come out grouped by degree, highest block first. Columns list the union
/// of the input supports in the global order.
pub fn canonical_form(m: &[Polynomial]) -> Result<CoeffMatrix> {
    check_uniform(m)?;
    let Some(first) = m.first() else {
        return CoeffMatrix::new(Vec::new(), Vec::new());
    };
    let mut ech = Echelon::new(TermOrdering::degrevlex(first.arity()));
    for p in m {
        ech.insert(p.clone());
    }
    ech.interreduce();
    let rows = ech.into_rows();
    let mut columns: Vec<Monomial> = m
        .iter()
        .flat_map(|r| r.support().cloned())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    columns.sort_unstable_by(|a, b| b.cmp(a));
    CoeffMatrix::new(rows, columns)
}

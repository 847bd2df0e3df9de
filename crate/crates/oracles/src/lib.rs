//! Slow, direct reference computations for cross-checking the library.
//!
//! Everything here works on dense rational matrices and exponent vectors of
//! its own, so agreement with the library is evidence rather than tautology.

use std::collections::{BTreeSet, HashMap};

use border_basis::{Field, Monomial, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Exponent vectors of total degree `<= d` in `n` variables, sorted by
/// degree descending and, within a degree, by degrevlex descending.
pub fn exponents_up_to(n: usize, d: u32) -> Vec<Vec<u16>> {
    let mut all = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(cur: &mut Vec<u16>, i: usize, left: u32, out: &mut Vec<Vec<u16>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(cur, i + 1, left - e, out);
        }
        cur[i] = 0;
    }
    rec(&mut cur, 0, d, &mut all);
    all.sort_by(|a, b| degrevlex(b, a));
    all
}

/// Degree first; ties go to the vector with the smaller last differing
/// exponent.
pub fn degrevlex(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        std::cmp::Ordering::Equal
    })
}

pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    exponents_up_to(n, d)
        .into_iter()
        .map(Monomial::new)
        .collect()
}

pub fn to_q(p: &Polynomial, m: &Monomial) -> Q {
    match p.coefficient(m) {
        None => Q::zero(),
        Some(c) => {
            let (a, b) = c.to_ratio();
            Q::new(a, b)
        }
    }
}

/// Rows of `polys` as dense vectors over `columns`. Panics if a support
/// monomial is missing from `columns`.
pub fn dense(polys: &[Polynomial], columns: &[Monomial]) -> Vec<Vec<Q>> {
    let pos: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut v = vec![Q::zero(); columns.len()];
            for (m, _) in p.terms() {
                v[pos[m]] = to_q(p, m);
            }
            v
        })
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivots.
pub fn rref(mut rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = Q::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    rref(rows).1.len()
}

/// Whether two polynomial lists span the same space.
pub fn same_span(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let cols: Vec<Monomial> = a
        .iter()
        .chain(b)
        .flat_map(|p| p.support().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if cols.is_empty() {
        return true;
    }
    let da = dense(a, &cols);
    let db = dense(b, &cols);
    let ra = rank(da.clone());
    let rb = rank(db.clone());
    ra == rb && rank(da.into_iter().chain(db).collect()) == ra
}

/// Whether `p` lies in the span of `basis`.
pub fn in_span(p: &Polynomial, basis: &[Polynomial]) -> bool {
    let mut all = basis.to_vec();
    let r = {
        let cols = support_columns(&all, p);
        rank(dense(&all, &cols))
    };
    all.push(p.clone());
    let cols = support_columns(&all, p);
    rank(dense(&all, &cols)) == r
}

fn support_columns(polys: &[Polynomial], extra: &Polynomial) -> Vec<Monomial> {
    let mut set: BTreeSet<Monomial> = polys.iter().flat_map(|p| p.support().cloned()).collect();
    set.extend(extra.support().cloned());
    if set.is_empty() {
        set.insert(Monomial::one(extra.arity()));
    }
    set.into_iter().collect()
}

fn from_dense(row: &[Q], columns: &[Monomial], n: usize) -> Polynomial {
    let terms = row
        .iter()
        .zip(columns)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, m)| {
            let s = Field::Rational
                .from_ratio(c.numer(), c.denom())
                .expect("rational");
            (m.clone(), s)
        });
    Polynomial::from_terms(n, Field::Rational, terms).unwrap()
}

fn times_var(m: &Monomial, j: usize) -> Monomial {
    let mut e = m.exponents().to_vec();
    e[j] += 1;
    Monomial::new(e)
}

/// The stable span computed the slow way: repeatedly intersect the span of
/// `V ∪ x1 V ∪ ... ∪ xn V` with the degree-`d` universe until nothing
/// changes. Rows come back in reduced echelon form.
pub fn naive_stable_span(f: &[Polynomial], n: usize, d: u32) -> Vec<Polynomial> {
    let cols = monomials(n, d + 1);
    let boundary = cols.iter().filter(|m| m.degree() == d + 1).count();
    let (mut v, _) = rref(dense(f, &cols));
    loop {
        let mut ext = v.clone();
        for row in &v {
            let p = from_dense(row, &cols, n);
            for j in 0..n {
                let q = Polynomial::from_terms(
                    n,
                    Field::Rational,
                    p.terms().iter().map(|(m, c)| (times_var(m, j), c.clone())),
                )
                .unwrap();
                ext.extend(dense(&[q], &cols));
            }
        }
        let (rows, pivots) = rref(ext);
        let inside: Vec<Vec<Q>> = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= boundary)
            .map(|(r, _)| r)
            .collect();
        if inside.len() == v.len() {
            return v.iter().map(|r| from_dense(r, &cols, n)).collect();
        }
        v = inside;
    }
}

/// Whether `set` is closed under divisors, by direct exponent comparison.
pub fn down_closed(set: &[Monomial]) -> bool {
    set.iter().all(|m| {
        (0..m.arity()).all(|j| {
            let e = m.exponents();
            if e[j] == 0 {
                return true;
            }
            let mut d = e.to_vec();
            d[j] -= 1;
            set.contains(&Monomial::new(d))
        })
    })
}

/// A zero-dimensional system together with an independent admissibility
/// test for candidate order ideals.
#[derive(Clone, Debug)]
pub struct KnownSystem {
    pub arity: usize,
    pub generators: Vec<Polynomial>,
    pub dimension: usize,
    pub kind: Kind,
}

#[derive(Clone, Debug)]
pub enum Kind {
    /// The vanishing ideal of distinct integer points.
    Points(Vec<Vec<i64>>),
    /// A Gröbner basis `x_i^{a_i} + lower-degree terms`; the generators
    /// given to the library are a triangular recombination of it.
    Staircase(Vec<Polynomial>),
}

fn eval(m: &Monomial, p: &[i64]) -> Q {
    let mut acc = BigInt::one();
    for (e, x) in m.exponents().iter().zip(p) {
        acc *= BigInt::from(*x).pow(*e as u32);
    }
    Q::from_integer(acc)
}

impl KnownSystem {
    /// Whether `o` (a set of `dimension` monomials) is a basis of the quotient.
    pub fn is_admissible(&self, o: &[Monomial]) -> bool {
        if o.len() != self.dimension || !down_closed(o) {
            return false;
        }
        match &self.kind {
            Kind::Points(points) => {
                let m: Vec<Vec<Q>> = o
                    .iter()
                    .map(|t| points.iter().map(|p| eval(t, p)).collect())
                    .collect();
                rank(m) == self.dimension
            }
            Kind::Staircase(gb) => {
                let top = o.iter().map(Monomial::degree).max().unwrap_or(0);
                let cols = monomials(self.arity, top);
                let mut rows = Vec::new();
                for g in gb {
                    let dg = g.degree().unwrap();
                    for t in cols.iter().filter(|t| t.degree() + dg <= top) {
                        let shifted = Polynomial::from_terms(
                            self.arity,
                            Field::Rational,
                            g.terms().iter().map(|(m, c)| (m.mul(t), c.clone())),
                        )
                        .unwrap();
                        rows.push(shifted);
                    }
                }
                let mac = dense(&rows, &cols);
                let base = rank(mac.clone());
                let units: Vec<Polynomial> = o
                    .iter()
                    .map(|t| Polynomial::monomial(t.clone(), Field::Rational))
                    .collect();
                let all: Vec<Vec<Q>> = mac.into_iter().chain(dense(&units, &cols)).collect();
                rank(all) == base + self.dimension
            }
        }
    }

    /// The universe `T^n_{<=d-1}` in the global order.
    pub fn universe(&self) -> Vec<Monomial> {
        if self.dimension == 0 {
            return Vec::new();
        }
        monomials(self.arity, self.dimension as u32 - 1)
    }

    /// All admissible order ideals, by trying every `d`-subset of the
    /// universe; sorted lexicographically by characteristic vector over the
    /// universe order.
    pub fn brute_force_admissible(&self) -> Vec<Vec<Monomial>> {
        let l = self.universe();
        let d = self.dimension;
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(d);
        fn rec(
            sys: &KnownSystem,
            l: &[Monomial],
            start: usize,
            d: usize,
            pick: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if pick.len() == d {
                let o: Vec<Monomial> = pick.iter().map(|&i| l[i].clone()).collect();
                if sys.is_admissible(&o) {
                    out.push(pick.clone());
                }
                return;
            }
            for i in start..l.len() {
                pick.push(i);
                rec(sys, l, i + 1, d, pick, out);
                pick.pop();
            }
        }
        let mut idx = Vec::new();
        rec(self, &l, 0, d, &mut pick, &mut idx);
        let key = |s: &Vec<usize>| {
            let mut v = vec![false; l.len()];
            for &i in s {
                v[i] = true;
            }
            v
        };
        idx.sort_by_key(key);
        for s in idx {
            out.push(s.iter().map(|&i| l[i].clone()).collect());
        }
        out
    }
}

fn random_small<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Q {
    q(rng.gen_range(lo..=hi))
}

/// The vanishing ideal of `d` distinct random points in `{-3..3}^n`,
/// generated by all polynomials of degree `<= d` vanishing on them.
pub fn points_system<R: Rng>(rng: &mut R, n: usize, d: usize) -> KnownSystem {
    let mut points: Vec<Vec<i64>> = Vec::new();
    while points.len() < d {
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let cols = monomials(n, d as u32);
    // Kernel of the evaluation map: rows of the evaluation matrix, reduced.
    let ev: Vec<Vec<Q>> = points
        .iter()
        .map(|p| cols.iter().map(|m| eval(m, p)).collect())
        .collect();
    let (rows, pivots) = rref(ev);
    let mut generators = Vec::new();
    for free in (0..cols.len()).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols.len()];
        v[free] = Q::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        generators.push(from_dense(&v, &cols, n));
    }
    generators.shuffle(rng);
    KnownSystem {
        arity: n,
        generators,
        dimension: d,
        kind: Kind::Points(points),
    }
}

/// `x_i^{a_i} + random terms of lower degree`, handed over after a random
/// triangular recombination.
pub fn staircase_system<R: Rng>(rng: &mut R, exponents: &[u32]) -> KnownSystem {
    let n = exponents.len();
    let mut gb = Vec::new();
    for (i, &a) in exponents.iter().enumerate() {
        let mut e = vec![0u16; n];
        e[i] = a as u16;
        let mut terms = vec![(Monomial::new(e), Field::Rational.one())];
        if a > 0 {
            for m in monomials(n, a - 1) {
                if rng.gen_bool(0.3) {
                    let c = random_small(rng, -3, 3);
                    let s = Field::Rational.from_ratio(c.numer(), c.denom()).unwrap();
                    terms.push((m, s));
                }
            }
        }
        gb.push(Polynomial::from_terms(n, Field::Rational, terms).unwrap());
    }
    let mut generators = gb.clone();
    for (i, target) in generators.iter_mut().enumerate().skip(1) {
        let j = rng.gen_range(0..i);
        let var = rng.gen_range(0..=n);
        let multiplier = if var == n {
            Monomial::one(n)
        } else {
            let mut e = vec![0u16; n];
            e[var] = 1;
            Monomial::new(e)
        };
        let c = Field::Rational.from_i64(rng.gen_range(-2..=2));
        let shifted = Polynomial::from_terms(
            n,
            Field::Rational,
            gb[j]
                .terms()
                .iter()
                .map(|(m, k)| (m.mul(&multiplier), k * &c)),
        )
        .unwrap();
        *target = target.try_add(&shifted).unwrap();
    }
    if rng.gen_bool(0.5) {
        let extra = generators[0].try_add(&generators[n - 1]).unwrap();
        if !extra.is_zero() {
            generators.push(extra);
        }
    }
    KnownSystem {
        arity: n,
        generators,
        dimension: exponents.iter().product::<u32>() as usize,
        kind: Kind::Staircase(gb),
    }
}

/// Number of monomials of degree `<= d` in `n` variables.
pub fn universe_size(n: usize, d: usize) -> usize {
    let mut acc = 1usize;
    for i in 0..n {
        acc = acc * (d + i + 1) / (i + 1);
    }
    acc
}

/// A random system with `n <= 3`, `d <= 6` and `|T^n_{<=d-1}| <= 20`.
pub fn random_known_system<R: Rng>(rng: &mut R) -> KnownSystem {
    loop {
        let n = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            let d = rng.gen_range(1..=6);
            if universe_size(n, d - 1) <= 20 {
                return points_system(rng, n, d);
            }
        } else {
            let a: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
            let d: u32 = a.iter().product();
            if d <= 6 && universe_size(n, d as usize - 1) <= 20 {
                return staircase_system(rng, &a);
            }
        }
    }
}

/// Random integer weights in `[-5, 5]` over the given monomials.
pub fn random_weights<R: Rng>(rng: &mut R, l: &[Monomial]) -> Vec<(Monomial, i64)> {
    l.iter()
        .map(|m| (m.clone(), rng.gen_range(-5..=5)))
        .collect()
}

/// Edges as `(u, v)` with `1 <= u < v <= n`, each present with probability `p`.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Maximum number of edges among any `k` vertices, by trying all subsets.
pub fn max_edges_on_k_vertices(n: usize, edges: &[(usize, usize)], k: usize) -> usize {
    let set: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let inside = |v: usize| mask >> (v - 1) & 1 == 1;
        let count = set.iter().filter(|&&(u, v)| inside(u) && inside(v)).count();
        best = best.max(count);
    }
    best
}

/// Every `r x r` minor of the integer matrix
/// `a[j][i] = (i+1)^(j+1)` with `r` rows `j < rows` is nonzero.
pub fn all_minors_nonzero(n: usize, rows: usize) -> bool {
    let a: Vec<Vec<Q>> = (1..=rows as u32)
        .map(|j| (1..=n as i64).map(|i| q(i.pow(j))).collect())
        .collect();
    for r in 1..=rows.min(n) {
        for row_mask in 0u32..(1 << rows) {
            if row_mask.count_ones() as usize != r {
                continue;
            }
            for col_mask in 0u32..(1 << n) {
                if col_mask.count_ones() as usize != r {
                    continue;
                }
                let sub: Vec<Vec<Q>> = (0..rows)
                    .filter(|j| row_mask >> j & 1 == 1)
                    .map(|j| {
                        (0..n)
                            .filter(|i| col_mask >> i & 1 == 1)
                            .map(|i| a[j][i].clone())
                            .collect()
                    })
                    .collect();
                if rank(sub) != r {
                    return false;
                }
            }
        }
    }
    true
}

//! k-Clique as an order ideal optimization problem.
//!
//! The system `F_{n,k}` consists of the linear forms `v_j = Σ_i i^j x_i`
//! for `j = 1..n-k` and every cubic monomial. Its admissible order ideals
//! are `{1} ∪ S ∪ S·S` for the `k`-subsets `S` of variables, so weighting
//! `x_u x_v` by one for edges and squares makes the best score
//! `k (k + 1) / 2` exactly when the graph has a `k`-clique.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::engine::{choose, prepare, Chooser, Prepared};
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order_ideal::OrderIdeal;
use crate::polynomial::Polynomial;
use crate::polytope::Preference;
use crate::scalar::Field;

const BRUTE_FORCE_LIMIT: usize = 20;

/// A simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Repeated edges are merged; loops and out-of-range vertices fail.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::OutOfRange(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::OutOfRange(format!("edge {u}-{v} outside 1..={n}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Graph::new(n, edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Number of edges with both ends in `vertices`.
    pub fn induced_edges(&self, vertices: &[usize]) -> usize {
        let mut count = 0;
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// First line `n`, then one `u v` pair per line. Blank lines and `#`
    /// comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, message: &str| Error::Parse {
            column: 1,
            message: format!("line {line}: {message}"),
        };
        let (first, header) = lines.next().ok_or_else(|| bad(1, "missing vertex count"))?;
        let n: usize = header
            .parse()
            .map_err(|_| bad(first, "vertex count must be a nonnegative integer"))?;
        let mut edges = Vec::new();
        for (line, text) in lines {
            let fields: Vec<&str> = text.split_whitespace().collect();
            let [u, v] = fields.as_slice() else {
                return Err(bad(line, "expected `u v`"));
            };
            let u: usize = u.parse().map_err(|_| bad(line, "bad vertex"))?;
            let v: usize = v.parse().map_err(|_| bad(line, "bad vertex"))?;
            edges.push((u, v));
        }
        Graph::new(n, edges)
    }
}

/// `{Σ_i i^j x_i : j = 1..n-k} ∪ T^n_{=3}`.
pub fn generate_f_nk(n: usize, k: usize, field: Field) -> Result<Vec<Polynomial>> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} must lie in 1..={n}")));
    }
    if let Field::Prime(p) = field {
        if p as u128 <= n as u128 {
            return Err(Error::InvalidField(format!(
                "GF({p}) needs more than {n} distinct evaluation points"
            )));
        }
    }
    let mut out = Vec::with_capacity(n - k);
    for j in 1..=(n - k) as u32 {
        let terms = (0..n).map(|i| {
            let c: BigInt = BigInt::from(i + 1).pow(j);
            (Monomial::var(n, i), field.from_bigint(&c))
        });
        out.push(Polynomial::from_terms(n, field, terms)?);
    }
    out.extend(
        monomials_of_degree(n, 3)
            .into_iter()
            .map(|m| Polynomial::monomial(m, field)),
    );
    Ok(out)
}

/// Weight one on `x_u x_v` for every edge and on every square `x_u^2`.
pub fn clique_preference(g: &Graph) -> Preference {
    let n = g.n;
    let square = |u: usize| Monomial::var(n, u).mul_var(u);
    let mut c = Preference::new();
    for u in 0..n {
        c.set(square(u), 1);
    }
    for (u, v) in g.edges() {
        c.set(Monomial::var(n, u - 1).mul_var(v - 1), 1);
    }
    c
}

/// Decision, witness and score of one clique query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueOutcome {
    pub has_clique: bool,
    /// Vertices `u` with `x_u` in the optimal order ideal, ascending.
    pub witness: Vec<usize>,
    pub score: i64,
    pub order_ideal: OrderIdeal,
}

/// The prepared instance for `F_{n,k}`, reusable across graphs on `n`
/// vertices.
#[derive(Clone, Debug)]
pub struct CliqueSolver {
    n: usize,
    k: usize,
    prepared: Prepared,
}

impl CliqueSolver {
    pub fn new(n: usize, k: usize, field: Field) -> Result<Self> {
        let f = generate_f_nk(n, k, field)?;
        let prepared = prepare(&f, None)?;
        let expected = 1 + k + k * (k + 1) / 2;
        if prepared.dimension() != expected {
            return Err(Error::Internal(format!(
                "quotient of F_({n},{k}) has dimension {}, expected {expected}",
                prepared.dimension()
            )));
        }
        Ok(CliqueSolver { n, k, prepared })
    }

    pub fn prepared(&self) -> &Prepared {
        &self.prepared
    }

    pub fn solve(&self, g: &Graph, threads: usize) -> Result<CliqueOutcome> {
        if g.vertex_count() != self.n {
            return Err(Error::Precondition(format!(
                "graph has {} vertices, instance expects {}",
                g.vertex_count(),
                self.n
            )));
        }
        let chooser = Chooser::Preference(clique_preference(g));
        let (o, score) = choose(&self.prepared, &chooser, threads)?;
        let score = score.expect("preference chooser reports a score");
        let witness: Vec<usize> = (0..self.n)
            .filter(|&u| o.contains(&Monomial::var(self.n, u)))
            .map(|u| u + 1)
            .collect();
        if witness.len() != self.k || score != (self.k + g.induced_edges(&witness)) as i64 {
            return Err(Error::Internal(format!(
                "optimal order ideal {o} does not have the clique shape"
            )));
        }
        Ok(CliqueOutcome {
            has_clique: score == (self.k * (self.k + 1) / 2) as i64,
            witness,
            score,
            order_ideal: o,
        })
    }
}

/// Decides whether `g` has a `k`-clique by optimizing over `F_{n,k}`.
pub fn solve_k_clique(g: &Graph, k: usize) -> Result<CliqueOutcome> {
    CliqueSolver::new(g.vertex_count(), k, Field::Rational)?.solve(g, 1)
}

/// Largest number of edges induced by any `k`-subset, by exhaustive search.
pub fn brute_force_max_edges(g: &Graph, k: usize) -> Result<usize> {
    if g.n > BRUTE_FORCE_LIMIT {
        return Err(Error::OutOfRange(format!(
            "exhaustive search limited to {BRUTE_FORCE_LIMIT} vertices"
        )));
    }
    if k > g.n {
        return Err(Error::OutOfRange(format!(
            "k = {k} exceeds {} vertices",
            g.n
        )));
    }
    let mut best = 0;
    for mask in 0u32..(1 << g.n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let vs: Vec<usize> = (0..g.n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        best = best.max(g.induced_edges(&vs));
    }
    Ok(best)
}

/// Whether some `k`-subset is a clique, by exhaustive search.
pub fn brute_force_clique(g: &Graph, k: usize) -> Result<bool> {
    Ok(brute_force_max_edges(g, k)? == k * k.saturating_sub(1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_monomial, parse_polynomial};

    fn triangle() -> Graph {
        Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::new(3, [(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn generated_systems() {
        let f = generate_f_nk(3, 2, Field::Rational).unwrap();
        assert_eq!(f.len(), 11);
        assert_eq!(
            f[0],
            parse_polynomial("x1 + 2*x2 + 3*x3", 3, Field::Rational).unwrap()
        );
        assert_eq!(generate_f_nk(2, 2, Field::Rational).unwrap().len(), 4);
        let f = generate_f_nk(4, 2, Field::Rational).unwrap();
        assert_eq!(
            f[1],
            parse_polynomial("x1 + 4*x2 + 9*x3 + 16*x4", 4, Field::Rational).unwrap()
        );
        assert!(generate_f_nk(3, 0, Field::Rational).is_err());
        assert!(generate_f_nk(3, 4, Field::Rational).is_err());
        assert!(generate_f_nk(5, 2, Field::prime(5).unwrap()).is_err());
        assert!(generate_f_nk(5, 2, Field::prime(7).unwrap()).is_ok());
    }

    #[test]
    fn preferences() {
        let c = clique_preference(&triangle());
        assert_eq!(c.weights().len(), 6);
        let c = clique_preference(&Graph::new(2, []).unwrap());
        assert_eq!(c.weights().len(), 2);
        let c = clique_preference(&path3());
        assert_eq!(c.weight(&parse_monomial("x1*x3", 3).unwrap()), 0);
        assert_eq!(c.weight(&parse_monomial("x2*x3", 3).unwrap()), 1);
        assert_eq!(c.weights().len(), 5);
    }

    #[test]
    fn clique_examples() {
        let out = solve_k_clique(&triangle(), 3).unwrap();
        assert!(out.has_clique);
        assert_eq!((out.witness, out.score), (vec![1, 2, 3], 6));

        let out = solve_k_clique(&path3(), 3).unwrap();
        assert!(!out.has_clique);
        assert_eq!(out.score, 5);

        let out = solve_k_clique(&path3(), 1).unwrap();
        assert!(out.has_clique);
        assert_eq!((out.witness.len(), out.score), (1, 1));

        let out = solve_k_clique(&triangle(), 2).unwrap();
        assert_eq!(out.score, 3);
    }

    #[test]
    fn brute_force_examples() {
        assert!(brute_force_clique(&triangle(), 3).unwrap());
        assert!(!brute_force_clique(&path3(), 3).unwrap());
        assert!(brute_force_clique(&Graph::complete(5), 4).unwrap());
        assert!(brute_force_clique(&Graph::new(21, []).unwrap(), 2).is_err());
    }

    #[test]
    fn graph_files() {
        let g = Graph::parse("3\n1 2\n2 3\n# comment\n1 3\n").unwrap();
        assert_eq!(g, triangle());
        assert!(Graph::parse("3\n1 1\n").is_err());
        assert!(Graph::parse("3\n1 4\n").is_err());
        assert!(Graph::parse("3\n1\n").is_err());
        assert!(Graph::parse("").is_err());
    }
}

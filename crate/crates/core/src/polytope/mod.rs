//! The order ideal polytope of a stabilized generating set: admissibility,
//! separation, enumeration and optimization of its integral points.

mod solver;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{canonical_form, gauss_el, rank, CoeffMatrix, Echelon};
use crate::monomial::{monomials_of_degree, monomials_up_to, Monomial};
use crate::order_ideal::OrderIdeal;
use crate::ordering::TermOrdering;
use crate::parse::parse_monomial;
use crate::polynomial::Polynomial;
use crate::scalar::{Field, Scalar};
use crate::stable_span::is_l_stabilized;

pub use solver::SolveOptions;

const EPS: f64 = 1e-9;

/// `P(M, L)` for `L = T^n_{<=d-1}`: the universe, the canonical form of
/// `M^{<=d-1}`, and the target cardinality `d`.
#[derive(Clone, Debug)]
pub struct PolytopeInstance {
    arity: usize,
    field: Field,
    universe: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    canonical: CoeffMatrix,
    target: usize,
    standard: Vec<usize>,
    normal_forms: Vec<Vec<(usize, Scalar)>>,
}

/// A 0/1 point over the universe, listed in universe order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralPoint {
    entries: Vec<(Monomial, bool)>,
}

/// An integer weight per monomial; unlisted monomials weigh zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Preference {
    weights: BTreeMap<Monomial, i64>,
}

/// A constraint of the polytope violated by a candidate point.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// A coordinate outside `[0, 1]`.
    OutOfBounds { monomial: Monomial, value: f64 },
    /// `Σ z ≠ d`.
    Cardinality { sum: f64, target: usize },
    /// `Σ_{U} z ≥ |U| - rk Ũ` fails. `circuit` lists monomials of the
    /// point's support that are dependent modulo the ideal; `complement` is
    /// `U`, the universe minus a `d`-set containing the circuit.
    Independence {
        circuit: Vec<Monomial>,
        complement: Vec<Monomial>,
        lhs: f64,
        rhs: i64,
    },
    /// `z_divisor ≥ z_multiple` fails.
    DownClosure {
        divisor: Monomial,
        multiple: Monomial,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfBounds { monomial, value } => {
                write!(f, "z[{monomial}] = {value} lies outside [0, 1]")
            }
            Violation::Cardinality { sum, target } => {
                write!(f, "coordinates sum to {sum}, expected {target}")
            }
            Violation::Independence {
                circuit,
                complement,
                lhs,
                rhs,
            } => {
                write!(f, "{{")?;
                for (i, m) in circuit.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(
                    f,
                    "}} is linearly dependent modulo the ideal; over the {} complementary \
                     monomials the sum is {lhs} < {rhs}",
                    complement.len()
                )
            }
            Violation::DownClosure { divisor, multiple } => {
                write!(f, "{multiple} is selected but its divisor {divisor} is not")
            }
        }
    }
}

impl Preference {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_weights(weights: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut p = Preference::new();
        for (m, w) in weights {
            p.set(m, w);
        }
        p
    }

    pub fn set(&mut self, m: Monomial, weight: i64) {
        if weight == 0 {
            self.weights.remove(&m);
        } else {
            self.weights.insert(m, weight);
        }
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        self.weights.get(m).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> &BTreeMap<Monomial, i64> {
        &self.weights
    }

    pub fn score<'a>(&self, monomials: impl IntoIterator<Item = &'a Monomial>) -> i64 {
        monomials.into_iter().map(|m| self.weight(m)).sum()
    }

    /// Reads lines `<monomial> <integer>`; blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str, arity: usize) -> Result<Self> {
        let mut p = Preference::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse {
                column: 1,
                message: format!("line {}: {message}", lineno + 1),
            };
            let (mono, weight) = line
                .rsplit_once(char::is_whitespace)
                .ok_or_else(|| bad("expected `<monomial> <integer>`".into()))?;
            let m = parse_monomial(mono, arity).map_err(|e| bad(e.to_string()))?;
            let w: i64 = weight
                .trim()
                .parse()
                .map_err(|_| bad(format!("`{weight}` is not an integer")))?;
            if p.weights.contains_key(&m) {
                return Err(bad(format!("{m} listed twice")));
            }
            p.set(m, w);
        }
        Ok(p)
    }
}

impl IntegralPoint {
    pub fn entries(&self) -> &[(Monomial, bool)] {
        &self.entries
    }

    pub fn value(&self, m: &Monomial) -> Option<bool> {
        self.entries.iter().find(|(t, _)| t == m).map(|&(_, b)| b)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|&(_, b)| if b { 1.0 } else { 0.0 })
            .collect()
    }
}

/// `O(z) = {m : z_m = 1}`.
pub fn order_ideal_of_point(z: &IntegralPoint, arity: usize) -> Result<OrderIdeal> {
    OrderIdeal::new(
        arity,
        z.entries.iter().filter(|(_, b)| *b).map(|(m, _)| m.clone()),
    )
}

/// The characteristic vector of `o` over `universe`.
pub fn point_of_order_ideal(o: &OrderIdeal, universe: &[Monomial]) -> Result<IntegralPoint> {
    let entries: Vec<(Monomial, bool)> = universe
        .iter()
        .map(|m| (m.clone(), o.contains(m)))
        .collect();
    let hits = entries.iter().filter(|(_, b)| *b).count();
    if hits != o.len() {
        let outside = o.iter().find(|m| !universe.contains(m)).unwrap();
        return Err(Error::NotInUniverse(outside.to_string()));
    }
    Ok(IntegralPoint { entries })
}

/// Builds `P(M^{<=d-1}, T^n_{<=d-1})` from a `T^n_{<=d}`-stabilized set.
pub fn build_instance(mstab: &[Polynomial], d: u32) -> Result<PolytopeInstance> {
    let first = mstab.first().ok_or_else(|| {
        Error::Precondition("cannot build a polytope from an empty generating set".into())
    })?;
    let (arity, field) = (first.arity(), first.field());
    if !is_l_stabilized(mstab, d)? {
        return Err(Error::NotStabilized(d));
    }
    let ord = TermOrdering::degrevlex(arity);
    let mut ech = Echelon::new(&ord);
    for p in mstab {
        ech.insert(p.clone());
    }
    if monomials_of_degree(arity, d)
        .iter()
        .any(|m| !ech.is_pivot(m))
    {
        return Err(Error::MissingTopDegree(d));
    }
    let lower: Vec<Polynomial> = ech
        .into_rows()
        .into_iter()
        .filter(|r| r.degree().unwrap() < d)
        .collect();
    let universe = if d == 0 {
        Vec::new()
    } else {
        monomials_up_to(arity, d - 1)
    };
    let found = universe.len() - lower.len();
    if found != d as usize {
        return Err(Error::CardinalityMismatch {
            expected: d as usize,
            found,
        });
    }
    let canonical = canonical_form(&lower)?;
    let canonical = CoeffMatrix::new(canonical.rows().to_vec(), universe.clone())?;
    PolytopeInstance::assemble(arity, field, universe, canonical, d as usize)
}

impl PolytopeInstance {
    fn assemble(
        arity: usize,
        field: Field,
        universe: Vec<Monomial>,
        canonical: CoeffMatrix,
        target: usize,
    ) -> Result<Self> {
        let index: HashMap<Monomial, usize> = universe
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let ord = TermOrdering::degrevlex(arity);
        let mut pivot_row = HashMap::new();
        for (r, row) in canonical.rows().iter().enumerate() {
            pivot_row.insert(row.leading_term(&ord)?, r);
        }
        let standard: Vec<usize> = (0..universe.len())
            .filter(|&i| !pivot_row.contains_key(&universe[i]))
            .collect();
        if standard.len() != target {
            return Err(Error::CardinalityMismatch {
                expected: target,
                found: standard.len(),
            });
        }
        let coordinate: HashMap<usize, usize> =
            standard.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        let mut normal_forms = Vec::with_capacity(universe.len());
        for (i, m) in universe.iter().enumerate() {
            let nf = match pivot_row.get(m) {
                None => vec![(coordinate[&i], field.one())],
                Some(&r) => {
                    let mut v = Vec::new();
                    for (t, c) in canonical.rows()[r].terms() {
                        if t == m {
                            continue;
                        }
                        let j = coordinate.get(&index[t]).copied().ok_or_else(|| {
                            Error::Internal(format!("{t} is both a pivot and a tail term"))
                        })?;
                        v.push((j, -c));
                    }
                    v
                }
            };
            normal_forms.push(nf);
        }
        Ok(PolytopeInstance {
            arity,
            field,
            universe,
            index,
            canonical,
            target,
            standard,
            normal_forms,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `L` in the global order (degree-descending, degrevlex within degree).
    pub fn universe(&self) -> &[Monomial] {
        &self.universe
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn canonical(&self) -> &CoeffMatrix {
        &self.canonical
    }

    /// `d = |L| - |M|`.
    pub fn target(&self) -> usize {
        self.target
    }

    /// Monomials of `L` that are not pivots of the canonical matrix; they
    /// form a basis of `<L> / <M>`.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.standard
            .iter()
            .map(|&i| self.universe[i].clone())
            .collect()
    }

    /// Coordinates of `m` modulo `<M>` in the standard monomial basis.
    pub fn normal_form(&self, m: &Monomial) -> Option<&[(usize, Scalar)]> {
        self.position(m).map(|i| self.normal_forms[i].as_slice())
    }

    pub(crate) fn normal_form_at(&self, i: usize) -> &[(usize, Scalar)] {
        &self.normal_forms[i]
    }

    fn dense(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.target];
        for (j, c) in &self.normal_forms[i] {
            v[*j] = c.clone();
        }
        v
    }

    /// `dim <S ∪ M> / <M>` for `S ⊆ L`.
    pub fn quotient_rank(&self, set: &[Monomial]) -> Result<usize> {
        let mut ech = solver::DenseEchelon::new(self.target);
        for m in set {
            let i = self
                .position(m)
                .ok_or_else(|| Error::NotInUniverse(m.to_string()))?;
            ech.push(self.dense(i));
        }
        Ok(ech.len())
    }

    /// Right-hand side `|U| - rk Ũ` of the independence inequality for `U`.
    pub fn independence_rhs(&self, u: &[Monomial]) -> Result<i64> {
        Ok(u.len() as i64 - rank(&self.canonical, u)? as i64)
    }
}

/// Whether `O` is a basis of `<L> / <M>`, that is `<L> = <M> ⊕ <O>`.
pub fn is_admissible(o: &OrderIdeal, inst: &PolytopeInstance) -> Result<bool> {
    if o.arity() != inst.arity {
        return Err(Error::ArityMismatch {
            expected: inst.arity,
            found: o.arity(),
        });
    }
    if o.len() != inst.target {
        return Ok(false);
    }
    let ord = TermOrdering::degrevlex(inst.arity);
    let rows: Vec<Polynomial> = o
        .iter()
        .map(|m| Polynomial::monomial(m.clone(), inst.field))
        .collect();
    let added = gauss_el(inst.canonical.rows(), &rows, &ord)?;
    Ok(added.len() == inst.target)
}

/// Finds a constraint violated by `z` (indexed like `inst.universe()`).
///
/// Bounds and cardinality are checked first, then the independence family
/// over the coordinates equal to one, then down-closure. Fractional points
/// are only probed through their entries at one.
pub fn separation_oracle(z: &[f64], inst: &PolytopeInstance) -> Result<Option<Violation>> {
    let l = &inst.universe;
    if z.len() != l.len() {
        return Err(Error::Precondition(format!(
            "point has {} coordinates, universe has {}",
            z.len(),
            l.len()
        )));
    }
    if let Some(i) = (0..z.len()).find(|&i| !(-EPS..=1.0 + EPS).contains(&z[i])) {
        return Ok(Some(Violation::OutOfBounds {
            monomial: l[i].clone(),
            value: z[i],
        }));
    }
    let sum: f64 = z.iter().sum();
    if (sum - inst.target as f64).abs() > EPS {
        return Ok(Some(Violation::Cardinality {
            sum,
            target: inst.target,
        }));
    }

    let ones: Vec<usize> = (0..z.len()).filter(|&i| z[i] >= 1.0 - EPS).collect();
    if let Some(circuit) = find_circuit(inst, &ones) {
        if circuit.len() <= inst.target {
            let mut chosen = vec![false; l.len()];
            for &i in &circuit {
                chosen[i] = true;
            }
            let mut rest: Vec<usize> = (0..l.len()).filter(|&i| !chosen[i]).collect();
            rest.sort_by(|&a, &b| z[b].partial_cmp(&z[a]).unwrap().then(a.cmp(&b)));
            for &i in rest.iter().take(inst.target - circuit.len()) {
                chosen[i] = true;
            }
            let complement: Vec<Monomial> = (0..l.len())
                .filter(|&i| !chosen[i])
                .map(|i| l[i].clone())
                .collect();
            let lhs: f64 = (0..l.len()).filter(|&i| !chosen[i]).map(|i| z[i]).sum();
            let rhs = inst.independence_rhs(&complement)?;
            if lhs < rhs as f64 - EPS {
                return Ok(Some(Violation::Independence {
                    circuit: circuit.iter().map(|&i| l[i].clone()).collect(),
                    complement,
                    lhs,
                    rhs,
                }));
            }
        }
    }

    for (i, m) in l.iter().enumerate() {
        for t in m.immediate_divisors() {
            if let Some(j) = inst.position(&t) {
                if z[j] < z[i] - EPS {
                    return Ok(Some(Violation::DownClosure {
                        divisor: t,
                        multiple: m.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// A minimal dependent subset (modulo `<M>`) of the given universe
/// positions, scanning them in order.
fn find_circuit(inst: &PolytopeInstance, positions: &[usize]) -> Option<Vec<usize>> {
    let d = inst.target;
    let k = positions.len();
    let zero = inst.field.zero();
    let mut rows: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (slot, &i) in positions.iter().enumerate() {
        let mut v = inst.dense(i);
        v.resize(d + k, zero.clone());
        v[d + slot] = inst.field.one();
        for (p, row) in &rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a = &*a - &(&c * b);
                    }
                }
            }
        }
        match (0..d).find(|&j| !v[j].is_zero()) {
            Some(p) => {
                let inv = v[p].inv().unwrap();
                for a in v.iter_mut() {
                    *a = &*a * &inv;
                }
                rows.push((p, v));
            }
            None => {
                return Some(
                    (0..=slot)
                        .filter(|&s| !v[d + s].is_zero())
                        .map(|s| positions[s])
                        .collect(),
                );
            }
        }
    }
    None
}

/// Every admissible order ideal, ordered lexicographically by
/// characteristic vector over the universe order.
pub fn enumerate_admissible(inst: &PolytopeInstance) -> Vec<OrderIdeal> {
    solver::enumerate(inst)
}

/// An admissible order ideal maximizing the preference, with its score.
/// Among optima the lexicographically smallest characteristic vector wins.
pub fn optimize(
    inst: &PolytopeInstance,
    c: &Preference,
    opts: &SolveOptions,
) -> Result<(IntegralPoint, i64)> {
    let (o, score) = solver::optimize(inst, c, opts)?;
    Ok((point_of_order_ideal(&o, &inst.universe)?, score))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_monomial_list, parse_polynomial};
    use crate::stable_span::l_stable_span;

    fn polys(list: &[&str], n: usize) -> Vec<Polynomial> {
        list.iter()
            .map(|s| parse_polynomial(s, n, Field::Rational).unwrap())
            .collect()
    }

    fn oi(s: &str, n: usize) -> OrderIdeal {
        OrderIdeal::new(n, parse_monomial_list(s, n).unwrap()).unwrap()
    }

    fn linear_instance() -> PolytopeInstance {
        let m = l_stable_span(&polys(&["x1 + x2", "x2^2"], 2), 2).unwrap();
        build_instance(&m, 2).unwrap()
    }

    #[test]
    fn build_examples() {
        let inst = linear_instance();
        assert_eq!(inst.universe().len(), 3);
        assert_eq!(inst.target(), 2);
        assert_eq!(inst.canonical().rows(), polys(&["x1 + x2"], 2).as_slice());

        let inst = build_instance(&polys(&["x^2 - 1"], 1), 2).unwrap();
        assert_eq!(inst.universe().len(), 2);
        assert!(inst.canonical().rows().is_empty());
        assert_eq!(inst.target(), 2);
    }

    #[test]
    fn build_errors_are_distinct() {
        assert!(matches!(
            build_instance(&polys(&["x - 1"], 1), 2),
            Err(Error::NotStabilized(2))
        ));
        assert!(matches!(
            build_instance(&polys(&["x1^2", "x1*x2"], 2), 2),
            Err(Error::MissingTopDegree(2))
        ));
        let m = l_stable_span(&polys(&["x1 + x2", "x2^2"], 2), 3).unwrap();
        assert!(matches!(
            build_instance(&m, 3),
            Err(Error::CardinalityMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn admissibility_and_points() {
        let inst = linear_instance();
        assert!(is_admissible(&oi("1, x1", 2), &inst).unwrap());
        assert!(is_admissible(&oi("1, x2", 2), &inst).unwrap());
        assert!(!is_admissible(&oi("1", 2), &inst).unwrap());

        let z = point_of_order_ideal(&oi("1, x1", 2), inst.universe()).unwrap();
        assert_eq!(z.value(&parse_monomial("x1", 2).unwrap()), Some(true));
        assert_eq!(z.value(&parse_monomial("x2", 2).unwrap()), Some(false));
        assert_eq!(order_ideal_of_point(&z, 2).unwrap(), oi("1, x1", 2));
        assert!(point_of_order_ideal(&oi("1, x1, x1^2", 2), inst.universe()).is_err());
    }

    #[test]
    fn separation_examples() {
        let inst = linear_instance();
        // universe order: x1, x2, 1
        assert_eq!(separation_oracle(&[1.0, 0.0, 1.0], &inst).unwrap(), None);
        match separation_oracle(&[1.0, 1.0, 0.0], &inst).unwrap() {
            Some(Violation::Independence {
                complement,
                lhs,
                rhs,
                ..
            }) => {
                assert_eq!(complement, vec![Monomial::one(2)]);
                assert_eq!((lhs, rhs), (0.0, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            separation_oracle(&[1.0, 1.0, 1.0], &inst).unwrap(),
            Some(Violation::Cardinality { .. })
        ));
        assert!(matches!(
            separation_oracle(&[1.5, 0.0, 0.5], &inst).unwrap(),
            Some(Violation::OutOfBounds { .. })
        ));
    }

    #[test]
    fn enumerate_and_optimize_examples() {
        let inst = linear_instance();
        assert_eq!(
            enumerate_admissible(&inst),
            vec![oi("1, x2", 2), oi("1, x1", 2)]
        );
        let c = Preference::from_weights([(parse_monomial("x1", 2).unwrap(), 5)]);
        let (z, score) = optimize(&inst, &c, &SolveOptions::default()).unwrap();
        assert_eq!(score, 5);
        assert_eq!(order_ideal_of_point(&z, 2).unwrap(), oi("1, x1", 2));

        let (z, score) = optimize(&inst, &Preference::new(), &SolveOptions::default()).unwrap();
        assert_eq!(score, 0);
        assert_eq!(order_ideal_of_point(&z, 2).unwrap(), oi("1, x2", 2));

        let univariate = build_instance(&polys(&["x^2 - 1"], 1), 2).unwrap();
        assert_eq!(enumerate_admissible(&univariate), vec![oi("1, x", 1)]);
    }

    #[test]
    fn preference_file() {
        let p = Preference::parse("x1*x2 1\n# note\n\nx1 -3\n", 2).unwrap();
        assert_eq!(p.weight(&parse_monomial("x1*x2", 2).unwrap()), 1);
        assert_eq!(p.weight(&parse_monomial("x1", 2).unwrap()), -3);
        assert_eq!(p.weight(&Monomial::one(2)), 0);
        assert!(Preference::parse("x1 1\nx1 2\n", 2).is_err());
        assert!(Preference::parse("x1 one\n", 2).is_err());
    }
}

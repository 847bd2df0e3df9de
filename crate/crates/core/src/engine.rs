//! The border basis pipeline: find the computational universe and quotient
//! dimension, choose an admissible order ideal, and extract its border basis.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{gauss_el, ColumnOrder, Echelon};
use crate::monomial::{monomials_of_degree, monomials_up_to, Monomial};
use crate::order_ideal::{is_order_ideal, OrderIdeal};
use crate::ordering::{MonomialOrder, TermOrdering};
use crate::polynomial::Polynomial;
use crate::polytope::{
    build_instance, is_admissible, optimize, order_ideal_of_point, point_of_order_ideal,
    separation_oracle, PolytopeInstance, Preference, SolveOptions, Violation,
};
use crate::scalar::Field;
use crate::stable_span::l_stable_span;

/// How the order ideal is picked once the polytope is known.
#[derive(Clone, Debug)]
pub enum Chooser {
    /// Use exactly this order ideal; fail if it is not admissible.
    Fixed(OrderIdeal),
    /// Maximize the preference over all admissible order ideals.
    Preference(Preference),
    /// The complement of the leading terms under a degree-compatible ordering.
    Default(TermOrdering),
}

#[derive(Clone, Debug, Default)]
pub struct EngineOptions {
    /// Largest degree the saturation loop may reach; `None` picks
    /// [`default_degree_cap`].
    pub degree_cap: Option<u32>,
    pub threads: usize,
}

/// `n * maxdeg + 2`.
pub fn default_degree_cap(arity: usize, max_degree: u32) -> u32 {
    arity as u32 * max_degree + 2
}

/// Everything computed before an order ideal is chosen.
#[derive(Clone, Debug)]
pub struct Prepared {
    arity: usize,
    field: Field,
    saturation_degree: u32,
    dimension: usize,
    span: Vec<Polynomial>,
    instance: PolytopeInstance,
    fixed_point_check: bool,
}

impl Prepared {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Last degree at which every monomial of that degree was a leading term.
    pub fn saturation_degree(&self) -> u32 {
        self.saturation_degree
    }

    /// `dim K[X] / I`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Stable span of the generators in `T^n_{<=d}`, `d` the dimension.
    pub fn span(&self) -> &[Polynomial] {
        &self.span
    }

    pub fn instance(&self) -> &PolytopeInstance {
        &self.instance
    }

    /// Whether recomputing the stable span of the final span added nothing.
    pub fn fixed_point_check(&self) -> bool {
        self.fixed_point_check
    }
}

fn validate(f: &[Polynomial]) -> Result<(usize, Field, u32)> {
    let first = f
        .first()
        .ok_or_else(|| Error::Precondition("no generators given".into()))?;
    let (arity, field) = (first.arity(), first.field());
    let mut top = 0;
    for p in f {
        if p.arity() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: p.arity(),
            });
        }
        if p.field() != field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: p.field().to_string(),
            });
        }
        top = top.max(p.degree().ok_or(Error::ZeroPolynomial)?);
    }
    Ok((arity, field, top))
}

fn saturated(span: &[Polynomial], arity: usize, d: u32) -> bool {
    let lts: HashSet<&Monomial> = span.iter().map(|p| &p.terms()[0].0).collect();
    monomials_of_degree(arity, d)
        .iter()
        .all(|m| lts.contains(m))
}

/// Runs the universe search and dimension adjustment, then builds the
/// polytope instance over `T^n_{<=d-1}`.
///
/// After the dimension `d` is read off, a larger `d` triggers a fresh
/// stable span in `T^n_{<=d}`; if that span is not saturated in degree `d`
/// the saturation loop resumes from there.
pub fn prepare(f: &[Polynomial], degree_cap: Option<u32>) -> Result<Prepared> {
    let (arity, field, top) = validate(f)?;
    let cap = degree_cap.unwrap_or_else(|| default_degree_cap(arity, top));
    if cap < top {
        return Err(Error::Precondition(format!(
            "degree cap {cap} is below the input degree {top}"
        )));
    }
    let mut d = top;
    let mut span = l_stable_span(f, d)?;
    loop {
        while !saturated(&span, arity, d) {
            if d >= cap {
                return Err(Error::NotZeroDimensional { cap });
            }
            d += 1;
            span = l_stable_span(f, d)?;
        }
        let d_old = d;
        let universe = crate::stable_span::Universe::new(arity, d).size();
        let dim = (universe - span.len()) as u32;
        let candidate: Vec<Polynomial> = if dim <= d_old {
            span.iter()
                .filter(|p| p.degree().unwrap() <= dim)
                .cloned()
                .collect()
        } else {
            l_stable_span(f, dim)?
        };
        match build_instance(&candidate, dim) {
            Ok(instance) => {
                let fixed_point_check = l_stable_span(&candidate, dim)?.len() == candidate.len();
                return Ok(Prepared {
                    arity,
                    field,
                    saturation_degree: d_old,
                    dimension: dim as usize,
                    span: candidate,
                    instance,
                    fixed_point_check,
                });
            }
            Err(Error::NotStabilized(_))
            | Err(Error::MissingTopDegree(_))
            | Err(Error::CardinalityMismatch { .. }) => {
                let next = dim.max(d_old) + 1;
                if next > cap.max(dim) {
                    return Err(Error::NotZeroDimensional { cap });
                }
                d = next;
                span = l_stable_span(f, d)?;
            }
            Err(e) => return Err(e),
        }
    }
}

/// `dim K[X] / <F>`.
pub fn dim_quotient(f: &[Polynomial], degree_cap: Option<u32>) -> Result<usize> {
    Ok(prepare(f, degree_cap)?.dimension())
}

/// A column order over a universe with every order ideal monomial placed
/// to the right of every other monomial. The left-most nonzero column of a
/// row is its head.
#[derive(Clone, Debug)]
pub struct HeadFunction {
    columns: ColumnOrder,
}

impl HeadFunction {
    /// Global order within each group: non-members of `o` first, then `o`.
    pub fn new(universe: &[Monomial], o: &OrderIdeal) -> Result<Self> {
        let (outside, inside): (Vec<Monomial>, Vec<Monomial>) =
            universe.iter().cloned().partition(|m| !o.contains(m));
        if inside.len() != o.len() {
            return Err(Error::Precondition(
                "order ideal is not contained in the universe".into(),
            ));
        }
        Self::with_columns(outside.into_iter().chain(inside).collect(), o)
    }

    /// An explicit column list; it must put every member of `o` after every
    /// non-member.
    pub fn with_columns(columns: Vec<Monomial>, o: &OrderIdeal) -> Result<Self> {
        let first_inside = columns
            .iter()
            .position(|m| o.contains(m))
            .unwrap_or(columns.len());
        if columns[first_inside..].iter().any(|m| !o.contains(m)) {
            return Err(Error::Precondition(
                "order ideal columns must be rightmost".into(),
            ));
        }
        if columns.len() - first_inside != o.len() {
            return Err(Error::Precondition(
                "order ideal is not contained in the columns".into(),
            ));
        }
        Ok(HeadFunction {
            columns: ColumnOrder::new(columns)?,
        })
    }

    pub fn columns(&self) -> &[Monomial] {
        self.columns.columns()
    }
}

impl MonomialOrder for HeadFunction {
    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.columns.compare(a, b)
    }
}

/// The left-most monomial of `p` under `order`.
pub fn head(p: &Polynomial, order: &HeadFunction) -> Result<Monomial> {
    p.leading_term(order)
}

/// An order ideal together with one generator `b - Σ α t` per border
/// monomial `b`, listed by border monomial, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderBasis {
    order_ideal: OrderIdeal,
    generators: Vec<(Monomial, Polynomial)>,
}

impl BorderBasis {
    pub fn order_ideal(&self) -> &OrderIdeal {
        &self.order_ideal
    }

    /// Pairs of border monomial and generator.
    pub fn generators(&self) -> &[(Monomial, Polynomial)] {
        &self.generators
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }

    pub fn border(&self) -> Vec<Monomial> {
        self.generators.iter().map(|(b, _)| b.clone()).collect()
    }
}

/// Extracts the `O`-border basis from `m`, which must span the degree
/// truncation of the ideal it generates, with `∂O` inside `T^n_{<=ℓ}` for
/// `ℓ` the top degree of `m`.
pub fn basis_transformation(m: &[Polynomial], o: &OrderIdeal) -> Result<BorderBasis> {
    let top = m
        .iter()
        .filter_map(Polynomial::degree)
        .max()
        .ok_or_else(|| Error::Precondition("empty span".into()))?;
    let universe = monomials_up_to(o.arity(), top);
    let order = HeadFunction::new(&universe, o)?;
    basis_transformation_with(m, o, &order)
}

/// [`basis_transformation`] with a caller-supplied head function.
pub fn basis_transformation_with(
    m: &[Polynomial],
    o: &OrderIdeal,
    order: &HeadFunction,
) -> Result<BorderBasis> {
    let border = o.border();
    if let Some(b) = border.iter().find(|b| !order.columns.contains(b)) {
        return Err(Error::Precondition(format!(
            "border monomial {b} lies outside the universe"
        )));
    }
    if let Some(t) = m
        .iter()
        .flat_map(Polynomial::support)
        .find(|t| !order.columns.contains(t))
    {
        return Err(Error::NotInUniverse(t.to_string()));
    }
    let mut ech = Echelon::new(order);
    for p in m {
        ech.insert(p.clone());
    }
    if let Some(t) = o.iter().find(|t| ech.is_pivot(t)) {
        return Err(Error::Precondition(format!(
            "order ideal is not admissible: {t} is a head"
        )));
    }
    ech.interreduce();
    let mut generators = Vec::with_capacity(border.len());
    for b in &border {
        let g = ech.pivot_row(b).ok_or_else(|| {
            Error::Precondition(format!(
                "order ideal is not admissible: no generator with head {b}"
            ))
        })?;
        if g.support().any(|t| t != b && !o.contains(t)) {
            return Err(Error::Precondition(format!(
                "order ideal is not admissible: {g} leaves the order ideal"
            )));
        }
        generators.push((b.clone(), g.clone()));
    }
    Ok(BorderBasis {
        order_ideal: o.clone(),
        generators,
    })
}

/// Result of the full pipeline.
#[derive(Clone, Debug)]
pub struct Computation {
    pub basis: BorderBasis,
    pub dimension: usize,
    /// Score under the preference, when one was given.
    pub score: Option<i64>,
    pub fixed_point_check: bool,
}

/// The order ideal selected by `chooser` on a prepared instance.
pub fn choose(
    prep: &Prepared,
    chooser: &Chooser,
    threads: usize,
) -> Result<(OrderIdeal, Option<i64>)> {
    let inst = prep.instance();
    match chooser {
        Chooser::Fixed(o) => {
            if o.arity() != prep.arity {
                return Err(Error::ArityMismatch {
                    expected: prep.arity,
                    found: o.arity(),
                });
            }
            if is_admissible(o, inst)? {
                Ok((o.clone(), None))
            } else {
                Err(Error::Inadmissible(Box::new(certificate(o, inst)?)))
            }
        }
        Chooser::Preference(c) => {
            let (z, score) = optimize(inst, c, &SolveOptions { threads })?;
            Ok((order_ideal_of_point(&z, prep.arity)?, Some(score)))
        }
        Chooser::Default(ord) => {
            if !ord.is_degree_compatible() || ord.arity() != prep.arity {
                return Err(Error::Precondition(
                    "default chooser needs a degree-compatible ordering on the ring".into(),
                ));
            }
            let lts: HashSet<Monomial> = gauss_el(&[], inst.canonical().rows(), ord)?
                .iter()
                .map(|r| r.leading_term(ord))
                .collect::<Result<_>>()?;
            let o = OrderIdeal::new(
                prep.arity,
                inst.universe().iter().filter(|m| !lts.contains(m)).cloned(),
            )?;
            Ok((o, None))
        }
    }
}

/// A violated constraint explaining why `o` is not admissible.
pub fn certificate(o: &OrderIdeal, inst: &PolytopeInstance) -> Result<Violation> {
    if o.len() != inst.target() {
        return Ok(Violation::Cardinality {
            sum: o.len() as f64,
            target: inst.target(),
        });
    }
    let z = point_of_order_ideal(o, inst.universe())?;
    separation_oracle(&z.to_f64(), inst)?
        .ok_or_else(|| Error::Internal(format!("no violated constraint for {o}")))
}

/// The generalized border basis algorithm.
pub fn bbasis(f: &[Polynomial], chooser: &Chooser, opts: &EngineOptions) -> Result<Computation> {
    let prep = prepare(f, opts.degree_cap)?;
    bbasis_prepared(&prep, chooser, opts.threads)
}

/// The order ideal choice and basis extraction on an already prepared system.
pub fn bbasis_prepared(prep: &Prepared, chooser: &Chooser, threads: usize) -> Result<Computation> {
    let (o, score) = choose(prep, chooser, threads)?;
    let basis = basis_transformation(prep.span(), &o)?;
    Ok(Computation {
        basis,
        dimension: prep.dimension(),
        score,
        fixed_point_check: prep.fixed_point_check(),
    })
}

/// Outcome of one verification condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass() -> Self {
        Check {
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Check {
            passed: false,
            detail: detail.into(),
        }
    }
}

/// Per-condition verdict on a claimed border basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Each generator is `b - Σ α t` for its own border monomial `b`.
    pub form: Check,
    /// Each generator lies in the ideal of the system.
    pub membership: Check,
    /// The order ideal is admissible for the ideal of the system.
    pub admissibility: Check,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.form.passed && self.membership.passed && self.admissibility.passed
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in [
            ("form", &self.form),
            ("membership", &self.membership),
            ("admissibility", &self.admissibility),
        ] {
            let verdict = if c.passed { "pass" } else { "fail" };
            if c.detail.is_empty() {
                writeln!(f, "{name}: {verdict}")?;
            } else {
                writeln!(f, "{name}: {verdict} ({})", c.detail)?;
            }
        }
        Ok(())
    }
}

fn check_form(o: &[Monomial], generators: &[Polynomial]) -> (Check, Option<OrderIdeal>) {
    let Some(arity) = o
        .first()
        .or_else(|| generators.first().map(|g| &g.terms()[0].0))
        .map(Monomial::arity)
    else {
        return (Check::fail("no order ideal and no generators"), None);
    };
    if !is_order_ideal(o) || o.iter().any(|m| m.arity() != arity) {
        return (
            Check::fail("the order ideal is not closed under divisors"),
            None,
        );
    }
    let oi = OrderIdeal::new(arity, o.iter().cloned()).unwrap();
    let border: BTreeSet<Monomial> = oi.border().into_iter().collect();
    let mut covered = BTreeSet::new();
    for g in generators {
        if g.arity() != arity {
            return (Check::fail(format!("{g} lives in another ring")), Some(oi));
        }
        let outside: Vec<&Monomial> = g.support().filter(|t| !oi.contains(t)).collect();
        let b = match outside.as_slice() {
            [b] => *b,
            _ => {
                return (
                    Check::fail(format!(
                        "{g} must have exactly one term outside the order ideal"
                    )),
                    Some(oi),
                )
            }
        };
        if !border.contains(b) {
            return (
                Check::fail(format!("{b} in {g} is not a border monomial")),
                Some(oi),
            );
        }
        if !g.coefficient(b).unwrap().is_one() {
            return (
                Check::fail(format!(
                    "border term {b} of {g} does not have coefficient 1"
                )),
                Some(oi),
            );
        }
        if !covered.insert(b.clone()) {
            return (Check::fail(format!("two generators for {b}")), Some(oi));
        }
    }
    if let Some(b) = border.iter().find(|b| !covered.contains(*b)) {
        return (
            Check::fail(format!("no generator for border monomial {b}")),
            Some(oi),
        );
    }
    (Check::pass(), Some(oi))
}

/// Checks a claimed border basis against the system `f` that should
/// generate the same ideal. Failures are reported, never raised.
pub fn verify_border_basis(
    o: &[Monomial],
    generators: &[Polynomial],
    f: &[Polynomial],
    degree_cap: Option<u32>,
) -> VerificationReport {
    let (form, oi) = check_form(o, generators);
    let prep = match prepare(f, degree_cap) {
        Ok(p) => p,
        Err(e) => {
            return VerificationReport {
                form,
                membership: Check::fail(e.to_string()),
                admissibility: Check::fail(e.to_string()),
            }
        }
    };

    let membership = membership_check(&prep, f, generators);
    let admissibility = match oi {
        None => Check::fail("the order ideal is not closed under divisors"),
        Some(oi) if oi.arity() != prep.arity() => Check::fail("order ideal lives in another ring"),
        Some(oi) => match is_admissible(&oi, prep.instance()) {
            Ok(true) => Check::pass(),
            Ok(false) => match certificate(&oi, prep.instance()) {
                Ok(v) => Check::fail(v.to_string()),
                Err(e) => Check::fail(e.to_string()),
            },
            Err(e) => Check::fail(e.to_string()),
        },
    };
    VerificationReport {
        form,
        membership,
        admissibility,
    }
}

fn membership_check(prep: &Prepared, f: &[Polynomial], generators: &[Polynomial]) -> Check {
    if let Some(g) = generators
        .iter()
        .find(|g| g.arity() != prep.arity() || g.field() != prep.field())
    {
        return Check::fail(format!("{g} lives in another ring"));
    }
    let top = generators
        .iter()
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(0);
    let degree = top
        .max(prep.saturation_degree())
        .max(prep.dimension() as u32);
    let span = match l_stable_span(f, degree) {
        Ok(s) => s,
        Err(e) => return Check::fail(e.to_string()),
    };
    let ech = Echelon::from_rows(TermOrdering::degrevlex(prep.arity()), span)
        .expect("stable spans are in echelon form");
    match generators.iter().find(|g| !ech.contains(g)) {
        Some(g) => Check::fail(format!("{g} is not in the ideal")),
        None => Check::pass(),
    }
}

impl BorderBasis {
    /// [`verify_border_basis`] on this basis.
    pub fn verify(&self, f: &[Polynomial], degree_cap: Option<u32>) -> VerificationReport {
        let o: Vec<Monomial> = self.order_ideal.iter().cloned().collect();
        verify_border_basis(&o, &self.polynomials(), f, degree_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_monomial, parse_monomial_list, parse_polynomial};

    fn polys(list: &[&str], n: usize) -> Vec<Polynomial> {
        list.iter()
            .map(|s| parse_polynomial(s, n, Field::Rational).unwrap())
            .collect()
    }

    fn oi(s: &str, n: usize) -> OrderIdeal {
        OrderIdeal::new(n, parse_monomial_list(s, n).unwrap()).unwrap()
    }

    fn default_chooser(n: usize) -> Chooser {
        Chooser::Default(TermOrdering::degrevlex(n))
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_quotient(&polys(&["x^2 - 1"], 1), None).unwrap(), 2);
        assert_eq!(
            dim_quotient(&polys(&["x1 + x2", "x2^2"], 2), None).unwrap(),
            2
        );
        assert!(matches!(
            dim_quotient(&polys(&["x1"], 2), None),
            Err(Error::NotZeroDimensional { .. })
        ));
        assert_eq!(
            dim_quotient(&polys(&["x1 + 3", "x2^2 - x1"], 2), None).unwrap(),
            2
        );
        assert_eq!(
            dim_quotient(&polys(&["x1^2 + 1", "5"], 2), None).unwrap(),
            0
        );
    }

    #[test]
    fn univariate_default() {
        let c = bbasis(
            &polys(&["x^2 - 1"], 1),
            &default_chooser(1),
            &EngineOptions::default(),
        )
        .unwrap();
        assert_eq!(*c.basis.order_ideal(), oi("1, x", 1));
        assert_eq!(c.basis.polynomials(), polys(&["x^2 - 1"], 1));
        assert!(c.fixed_point_check);
    }

    #[test]
    fn linear_system_with_preference() {
        let f = polys(&["x1 + x2", "x2^2"], 2);
        let c = Preference::from_weights([(parse_monomial("x1", 2).unwrap(), 5)]);
        let out = bbasis(&f, &Chooser::Preference(c), &EngineOptions::default()).unwrap();
        assert_eq!(*out.basis.order_ideal(), oi("1, x1", 2));
        assert_eq!(out.score, Some(5));
        let got: HashSet<Polynomial> = out.basis.polynomials().into_iter().collect();
        let want: HashSet<Polynomial> = polys(&["x2 + x1", "x1^2", "x1*x2"], 2)
            .into_iter()
            .collect();
        assert_eq!(got, want);
        assert!(out.basis.verify(&f, None).passed());
    }

    #[test]
    fn transformation_for_other_staircase() {
        let f = polys(&["x1 + x2", "x2^2"], 2);
        let prep = prepare(&f, None).unwrap();
        let b = basis_transformation(prep.span(), &oi("1, x2", 2)).unwrap();
        assert_eq!(b.border().len(), 3);
        let got: HashSet<Polynomial> = b.polynomials().into_iter().collect();
        let want: HashSet<Polynomial> = polys(&["x1 + x2", "x2^2", "x1*x2"], 2)
            .into_iter()
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn heads() {
        let u = monomials_up_to(1, 2);
        let h = HeadFunction::new(&u, &oi("1, x", 1)).unwrap();
        assert_eq!(
            head(&polys(&["x^2 - 1"], 1)[0], &h).unwrap().to_string(),
            "x^2"
        );

        let u = monomials_up_to(2, 1);
        let h = HeadFunction::new(&u, &oi("1, x1", 2)).unwrap();
        assert_eq!(
            head(&polys(&["x1 + x2"], 2)[0], &h).unwrap().to_string(),
            "x2"
        );

        let u = monomials_up_to(2, 0);
        let h = HeadFunction::new(&u, &OrderIdeal::empty(2)).unwrap();
        assert!(head(&polys(&["1"], 2)[0], &h).unwrap().is_one());
    }

    #[test]
    fn fixed_inadmissible_order_ideal() {
        let f = polys(&["x1 + x2", "x2^2"], 2);
        let err = bbasis(&f, &Chooser::Fixed(oi("1", 2)), &EngineOptions::default()).unwrap_err();
        assert!(
            matches!(err, Error::Inadmissible(v) if matches!(*v, Violation::Cardinality { .. }))
        );
    }

    #[test]
    fn verification_examples() {
        let f = polys(&["x^2 - 1"], 1);
        let o = parse_monomial_list("1, x", 1).unwrap();
        assert!(verify_border_basis(&o, &polys(&["x^2 - 1"], 1), &f, None).passed());

        let r = verify_border_basis(&o, &polys(&["x^2 - x"], 1), &f, None);
        assert!(r.form.passed && !r.membership.passed);

        let bad = parse_monomial_list("1, x^2", 1).unwrap();
        let r = verify_border_basis(&bad, &polys(&["x^3"], 1), &f, None);
        assert!(!r.form.passed && !r.passed());

        let r = verify_border_basis(&o, &polys(&["2*x^2 - 2"], 1), &f, None);
        assert!(!r.form.passed);
    }

    #[test]
    fn unit_ideal() {
        let out = bbasis(
            &polys(&["x1 + 1", "1"], 2),
            &default_chooser(2),
            &EngineOptions::default(),
        )
        .unwrap();
        assert!(out.basis.order_ideal().is_empty());
        assert_eq!(out.basis.polynomials(), polys(&["1"], 2));
    }
}

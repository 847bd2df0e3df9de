//! Depth-first branch and bound over the integral points of the polytope.
//!
//! Variables are the viable monomials of the universe (nonzero modulo the
//! ideal, and so are all their divisors), decided from the largest to the
//! smallest, trying 0 before 1. Choosing a monomial pulls in all of its
//! divisors; since multiples are always decided first, down-closure never
//! needs to be repaired afterwards. Independence is maintained on normal
//! forms in an incremental echelon. The bound completes the current set by
//! a maximum-weight basis of the contracted quotient matroid, which also
//! detects nodes that cannot reach `d` elements at all.
//!
//! Leaves are reached in increasing lexicographic order of characteristic
//! vectors, so keeping the first optimum gives the tie-break for free.

use std::sync::atomic::{AtomicI64, Ordering};

use rayon::prelude::*;

use super::{PolytopeInstance, Preference};
use crate::error::{Error, Result};
use crate::order_ideal::OrderIdeal;
use crate::scalar::Scalar;

/// Knobs for [`super::optimize`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Worker threads; `1` runs everything on the calling thread.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { threads: 1 }
    }
}

/// Dense vectors kept in echelon form, one pivot coordinate per row.
#[derive(Clone, Debug)]
pub(crate) struct DenseEchelon {
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl DenseEchelon {
    pub(crate) fn new(dim: usize) -> Self {
        DenseEchelon {
            dim,
            rows: Vec::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    fn truncate(&mut self, len: usize) {
        self.rows.truncate(len);
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(&c * b);
                }
            }
        }
    }

    /// Adds `v` if it is independent of the rows; reports whether it was.
    pub(crate) fn push(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        self.push_reduced(v)
    }

    fn push_reduced(&mut self, mut v: Vec<Scalar>) -> bool {
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().unwrap();
        for a in v.iter_mut() {
            if !a.is_zero() {
                *a = &*a * &inv;
            }
        }
        self.rows.push((p, v));
        true
    }
}

struct Problem {
    target: usize,
    /// Universe positions of the variables, in universe order.
    slots: Vec<usize>,
    vectors: Vec<Vec<Scalar>>,
    /// Strict divisors of each variable, as variable indices.
    divisors: Vec<Vec<usize>>,
    weights: Vec<i64>,
}

impl Problem {
    fn new(inst: &PolytopeInstance, c: Option<&Preference>) -> Self {
        let l = inst.universe();
        // Viability is decided from the smallest monomial up, so divisors
        // are settled before their multiples.
        let mut viable = vec![false; l.len()];
        for i in (0..l.len()).rev() {
            viable[i] = !inst.normal_form_at(i).is_empty()
                && l[i]
                    .immediate_divisors()
                    .all(|t| inst.position(&t).is_some_and(|j| viable[j]));
        }
        let slots: Vec<usize> = (0..l.len()).filter(|&i| viable[i]).collect();
        let mut var_of = vec![usize::MAX; l.len()];
        for (v, &i) in slots.iter().enumerate() {
            var_of[i] = v;
        }
        let vectors = slots.iter().map(|&i| inst.dense(i)).collect();
        let divisors = slots
            .iter()
            .enumerate()
            .map(|(v, &i)| {
                (v + 1..slots.len())
                    .filter(|&w| l[slots[w]].divides_unchecked(&l[i]))
                    .collect()
            })
            .collect();
        let weights = slots
            .iter()
            .map(|&i| c.map_or(0, |c| c.weight(&l[i])))
            .collect();
        Problem {
            target: inst.target(),
            slots,
            vectors,
            divisors,
            weights,
        }
    }

    fn len(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Clone)]
struct State {
    chosen: Vec<bool>,
    count: usize,
    score: i64,
    echelon: DenseEchelon,
}

impl State {
    fn new(p: &Problem) -> Self {
        State {
            chosen: vec![false; p.len()],
            count: 0,
            score: 0,
            echelon: DenseEchelon::new(p.target),
        }
    }

    /// Selects `v` and its divisors. On failure the state is unchanged.
    fn select(&mut self, p: &Problem, v: usize) -> Option<Vec<usize>> {
        let added: Vec<usize> = std::iter::once(v)
            .chain(p.divisors[v].iter().copied())
            .filter(|&w| !self.chosen[w])
            .collect();
        if self.count + added.len() > p.target {
            return None;
        }
        let mark = self.echelon.len();
        for &w in &added {
            if !self.echelon.push(p.vectors[w].clone()) {
                self.echelon.truncate(mark);
                return None;
            }
        }
        for &w in &added {
            self.chosen[w] = true;
            self.score += p.weights[w];
        }
        self.count += added.len();
        Some(added)
    }

    fn undo(&mut self, p: &Problem, added: &[usize]) {
        for &w in added {
            self.chosen[w] = false;
            self.score -= p.weights[w];
        }
        self.count -= added.len();
        self.echelon.truncate(self.echelon.len() - added.len());
    }

    /// Best achievable score using the undecided variables from `from` on,
    /// ignoring down-closure; `None` if `d` elements cannot be reached.
    fn bound(&self, p: &Problem, from: usize, weighted: bool) -> Option<i64> {
        let need = p.target - self.count;
        let mut free: Vec<usize> = (from..p.len()).filter(|&w| !self.chosen[w]).collect();
        if free.len() < need {
            return None;
        }
        if weighted {
            free.sort_by_key(|&w| std::cmp::Reverse(p.weights[w]));
        }
        let mut ech = self.echelon.clone();
        let mut gain = 0;
        let mut taken = 0;
        for w in free {
            if taken == need {
                break;
            }
            if ech.push(p.vectors[w].clone()) {
                taken += 1;
                gain += p.weights[w];
            }
        }
        (taken == need).then_some(self.score + gain)
    }

    fn solution(&self) -> Vec<usize> {
        (0..self.chosen.len()).filter(|&w| self.chosen[w]).collect()
    }
}

trait Visitor {
    fn weighted(&self) -> bool;
    /// Whether a node with this bound is still worth exploring.
    fn promising(&self, bound: i64) -> bool;
    fn leaf(&mut self, state: &State);
}

fn search(p: &Problem, st: &mut State, mut from: usize, vis: &mut impl Visitor) {
    while from < p.len() && st.chosen[from] {
        from += 1;
    }
    if st.count == p.target {
        vis.leaf(st);
        return;
    }
    if from == p.len() {
        return;
    }
    match st.bound(p, from, vis.weighted()) {
        Some(b) if vis.promising(b) => {}
        _ => return,
    }
    search(p, st, from + 1, vis);
    if let Some(added) = st.select(p, from) {
        search(p, st, from + 1, vis);
        st.undo(p, &added);
    }
}

struct Collect {
    found: Vec<Vec<usize>>,
}

impl Visitor for Collect {
    fn weighted(&self) -> bool {
        false
    }

    fn promising(&self, _: i64) -> bool {
        true
    }

    fn leaf(&mut self, state: &State) {
        self.found.push(state.solution());
    }
}

struct Best<'a> {
    best: Option<(i64, Vec<usize>)>,
    shared: Option<&'a AtomicI64>,
}

impl Visitor for Best<'_> {
    fn weighted(&self) -> bool {
        true
    }

    fn promising(&self, bound: i64) -> bool {
        if let Some((b, _)) = &self.best {
            if bound <= *b {
                return false;
            }
        }
        // Ties with other subtrees must survive for the final tie-break.
        self.shared
            .is_none_or(|s| bound >= s.load(Ordering::Relaxed))
    }

    fn leaf(&mut self, state: &State) {
        if self.best.as_ref().is_none_or(|(b, _)| state.score > *b) {
            self.best = Some((state.score, state.solution()));
            if let Some(s) = self.shared {
                s.fetch_max(state.score, Ordering::Relaxed);
            }
        }
    }
}

fn to_order_ideal(inst: &PolytopeInstance, p: &Problem, vars: &[usize]) -> OrderIdeal {
    let l = inst.universe();
    OrderIdeal::new(inst.arity(), vars.iter().map(|&v| l[p.slots[v]].clone()))
        .expect("search only produces down-closed sets")
}

pub(super) fn enumerate(inst: &PolytopeInstance) -> Vec<OrderIdeal> {
    let p = Problem::new(inst, None);
    let mut st = State::new(&p);
    let mut vis = Collect { found: Vec::new() };
    search(&p, &mut st, 0, &mut vis);
    vis.found
        .iter()
        .map(|s| to_order_ideal(inst, &p, s))
        .collect()
}

/// Splits the tree into subtrees rooted at the first `depth` free
/// decisions, in search order.
fn split(p: &Problem, st: &mut State, from: usize, depth: usize, out: &mut Vec<(State, usize)>) {
    let mut from = from;
    while from < p.len() && st.chosen[from] {
        from += 1;
    }
    if depth == 0 || st.count == p.target || from == p.len() {
        out.push((st.clone(), from));
        return;
    }
    if st.bound(p, from, false).is_none() {
        return;
    }
    split(p, st, from + 1, depth - 1, out);
    if let Some(added) = st.select(p, from) {
        split(p, st, from + 1, depth - 1, out);
        st.undo(p, &added);
    }
}

pub(super) fn optimize(
    inst: &PolytopeInstance,
    c: &Preference,
    opts: &SolveOptions,
) -> Result<(OrderIdeal, i64)> {
    let p = Problem::new(inst, Some(c));
    let mut st = State::new(&p);
    let best = if opts.threads <= 1 {
        let mut vis = Best {
            best: None,
            shared: None,
        };
        search(&p, &mut st, 0, &mut vis);
        vis.best
    } else {
        let mut roots = Vec::new();
        let depth = (usize::BITS - (4 * opts.threads).leading_zeros()) as usize + 2;
        split(&p, &mut st, 0, depth, &mut roots);
        let shared = AtomicI64::new(i64::MIN);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        let results: Vec<Option<(i64, Vec<usize>)>> = pool.install(|| {
            roots
                .into_par_iter()
                .map(|(mut st, from)| {
                    let mut vis = Best {
                        best: None,
                        shared: Some(&shared),
                    };
                    search(&p, &mut st, from, &mut vis);
                    vis.best
                })
                .collect()
        });
        // Subtrees are in search order, so the first maximum is the
        // lexicographically smallest optimum.
        results
            .into_iter()
            .flatten()
            .fold(None, |acc, cand| match acc {
                Some((s, _)) if s >= cand.0 => acc,
                _ => Some(cand),
            })
    };
    let (score, vars) = best.ok_or_else(|| {
        Error::Internal("the polytope has no integral point although the instance is valid".into())
    })?;
    Ok((to_order_ideal(inst, &p, &vars), score))
}

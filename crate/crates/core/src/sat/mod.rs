//! SAT solving via quantifier and selection products.
//!
//! Three solvers share this module:
//!
//! * [`sat_decide`] — the continuation-product decision procedure: the
//!   iterated product of `n` copies of the [`exists_quantifier`] applied
//!   directly to a predicate on assignments;
//! * [`sat_find`] — witness search via [`bounded_binary_search`] over the
//!   identity effect: if the predicate is satisfiable the returned
//!   assignment satisfies it;
//! * [`dpll`] — unit propagation layered under the same product by running
//!   the quantifiers over a state effect whose state is the explicit
//!   recursion tree of the algorithm ([`DpllState`]).
//!
//! [`verbose_sat`] is [`sat_find`] over the trace effect; its log exposes
//! how the product explores the search space.

mod dimacs;

pub use dimacs::{parse_dimacs, DimacsError};

use crate::effect::{
    Effect, IdentityEffect, StateEffect, Stateful, TraceEvent, TraceLog, Traced, TracedEffect,
};
use crate::select::{bounded_binary_search, Context, Quantifier};

/// A propositional literal: a variable index with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn negative(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// Flip the polarity; an involution.
    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    /// Whether the assignment makes this literal true.
    pub fn satisfied_by(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

/// A clause is a disjunction of literals; empty means unsatisfiable.
pub type Clause = Vec<Literal>;

/// A complete assignment: index `i` gives the value of variable `i`.
pub type Assignment = Vec<bool>;

/// A CNF formula: a conjunction of clauses over `var_count` variables.
///
/// The empty clause (`[]` inside `clauses`) and the empty clause set are
/// both representable and mean different things: the former is always
/// false, the latter always true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    var_count: usize,
}

impl ClauseSet {
    /// # Panics
    ///
    /// Panics if any literal mentions a variable `>= var_count`.
    pub fn new(var_count: usize, clauses: Vec<Clause>) -> Self {
        for c in &clauses {
            for l in c {
                assert!(l.var < var_count, "literal variable out of range");
            }
        }
        ClauseSet { clauses, var_count }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
}

/// True iff the clause has exactly one literal.
pub fn is_unit_clause(clause: &[Literal]) -> bool {
    clause.len() == 1
}

/// Assert `l`: drop clauses containing `l`, strip `!l` from the rest.
///
/// Clause and literal order is preserved. The result is equisatisfiable
/// with the input conjoined with `l`.
pub fn propagate_unit(l: Literal, clauses: &[Clause]) -> Vec<Clause> {
    clauses
        .iter()
        .filter(|c| !c.contains(&l))
        .map(|c| c.iter().copied().filter(|&m| m != l.negated()).collect())
        .collect()
}

/// Propagate unit clauses to a fixpoint.
///
/// Repeatedly takes the first unit clause in the current clause order and
/// propagates its literal over the whole set (which removes that unit
/// clause itself, since it contains its own literal). The result contains
/// no unit clauses and is equisatisfiable with the input. Propagation acts
/// on the other unit clauses too, so a contradictory pair like
/// `[[+1], [-1]]` yields the empty clause rather than vanishing.
pub fn simplify(clauses: &[Clause]) -> Vec<Clause> {
    let mut cs = clauses.to_vec();
    while let Some(unit) = cs.iter().find(|c| is_unit_clause(c)) {
        let l = unit[0];
        cs = propagate_unit(l, &cs);
    }
    cs
}

/// Evaluate a formula under a complete assignment.
pub fn eval_clauses(cs: &ClauseSet, assignment: &[bool]) -> bool {
    debug_assert_eq!(assignment.len(), cs.var_count);
    cs.clauses
        .iter()
        .all(|c| c.iter().any(|l| l.satisfied_by(assignment)))
}

// ---------------------------------------------------------------------------
// Product-based solvers
// ---------------------------------------------------------------------------

/// The boolean existential quantifier, `p ↦ p(p(true))`.
pub fn exists_quantifier() -> Quantifier<bool, bool, IdentityEffect> {
    Quantifier::new(|p: Context<bool, bool, IdentityEffect>| {
        let t = p.eval(true);
        p.eval(t)
    })
}

/// Decide whether any assignment of `n` booleans satisfies `q`.
///
/// Built as the iterated product of `n` existential quantifiers; agrees
/// with exhaustive enumeration.
pub fn sat_decide(n: usize, q: impl Fn(&[bool]) -> bool + Send + Sync + 'static) -> bool {
    let product = Quantifier::sequence(vec![exists_quantifier(); n]);
    product.run(Context::new(move |xs: Vec<bool>| q(&xs)))
}

/// Search for an assignment of `n` booleans satisfying `q`.
///
/// If `q` is satisfiable the result satisfies it; otherwise some failing
/// assignment is returned, so callers decide satisfiability by testing `q`
/// on the result.
pub fn sat_find(n: usize, q: impl Fn(&[bool]) -> bool + Send + Sync + 'static) -> Assignment {
    bounded_binary_search::<IdentityEffect>(n).run(Context::new(move |xs: Vec<bool>| q(&xs)))
}

/// [`sat_find`] over the trace effect: the same assignment, plus a log of
/// every query the product made, in evaluation order.
pub fn verbose_sat(
    n: usize,
    q: impl Fn(&[bool]) -> bool + Send + Sync + 'static,
) -> (Assignment, TraceLog) {
    let traced = bounded_binary_search::<TracedEffect>(n).run(Context::new(move |xs: Vec<bool>| {
        let result = q(&xs);
        Traced::new(result, vec![TraceEvent { query_input: xs, query_result: result }])
    }));
    traced.into_parts()
}

// ---------------------------------------------------------------------------
// DPLL over an explicit recursion tree
// ---------------------------------------------------------------------------

/// The recursion tree threaded through a DPLL run.
///
/// Queries walk the tree along their assignment bits (`true` goes left),
/// simplifying and expanding leaves on first visit; decided leaves are
/// never touched again, so each tree position sees exactly the clause set
/// the corresponding branch of the recursion would have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpllState {
    Leaf { simplified: bool, clauses: Vec<Clause> },
    Node { true_branch: Box<DpllState>, false_branch: Box<DpllState> },
}

/// An unsimplified leaf holding the whole formula.
pub fn initial_state(cs: &ClauseSet) -> DpllState {
    DpllState::Leaf { simplified: false, clauses: cs.clauses().to_vec() }
}

/// The query walked past every decision level without reaching a decided
/// leaf; the search path was shorter than the formula needed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("search path exhausted at depth {depth} before reaching a decision")]
pub struct DepthExhausted {
    pub depth: usize,
}

/// Walk the tree along `path`, deciding the query and returning the
/// possibly extended tree.
///
/// `depth` is the number of path bits consumed so far (0 at top level) and
/// doubles as the variable index for the next decision. Unsimplified leaves
/// are simplified first. A simplified empty clause set decides `true`; a
/// simplified set containing an empty clause decides `false`; any other
/// leaf expands into a node whose true branch adjoins the negative literal
/// for the current depth and whose false branch adjoins the positive one.
/// The polarity convention is symmetric, so it cannot affect
/// satisfiability; the tests pin the whole solver against enumeration.
pub fn query_state(
    state: DpllState,
    path: &[bool],
    depth: usize,
) -> Result<(DpllState, bool), DepthExhausted> {
    match state {
        DpllState::Leaf { simplified: false, clauses } => query_state(
            DpllState::Leaf { simplified: true, clauses: simplify(&clauses) },
            path,
            depth,
        ),
        DpllState::Leaf { simplified: true, clauses } => {
            if clauses.is_empty() {
                Ok((DpllState::Leaf { simplified: true, clauses }, true))
            } else if clauses.iter().any(|c| c.is_empty()) {
                Ok((DpllState::Leaf { simplified: true, clauses }, false))
            } else {
                let mut left = Vec::with_capacity(clauses.len() + 1);
                left.push(vec![Literal::negative(depth)]);
                left.extend(clauses.iter().cloned());
                let mut right = Vec::with_capacity(clauses.len() + 1);
                right.push(vec![Literal::positive(depth)]);
                right.extend(clauses);
                let node = DpllState::Node {
                    true_branch: Box::new(DpllState::Leaf { simplified: false, clauses: left }),
                    false_branch: Box::new(DpllState::Leaf { simplified: false, clauses: right }),
                };
                query_state(node, path, depth)
            }
        }
        DpllState::Node { true_branch, false_branch } => match path.split_first() {
            None => Err(DepthExhausted { depth }),
            Some((&true, rest)) => {
                let (t, b) = query_state(*true_branch, rest, depth + 1)?;
                Ok((DpllState::Node { true_branch: Box::new(t), false_branch }, b))
            }
            Some((&false, rest)) => {
                let (f, b) = query_state(*false_branch, rest, depth + 1)?;
                Ok((DpllState::Node { true_branch, false_branch: Box::new(f) }, b))
            }
        },
    }
}

/// Decide satisfiability by DPLL with unit propagation.
///
/// The branch quantifier `p ↦ bind(p(true), p)` is iterated over the state
/// effect carrying the recursion tree; the final continuation answers each
/// assignment through [`query_state`], so every branch of the search sees
/// its own simplified copy of the clause set.
pub fn dpll(cs: &ClauseSet) -> bool {
    let n = cs.var_count();
    let branch = || {
        Quantifier::<bool, bool, StateEffect<DpllState>>::new(
            |p: Context<bool, bool, StateEffect<DpllState>>| {
                let p2 = p.clone();
                StateEffect::bind(p.eval(true), move |b| p2.eval(b))
            },
        )
    };
    let product = Quantifier::sequence((0..n).map(|_| branch()).collect());
    let answer = product.run(Context::new(move |xs: Vec<bool>| {
        Stateful::new(move |tree: DpllState| {
            let (tree, decision) = query_state(tree, &xs, 0)
                .expect("paths from the product cover every decision level");
            (decision, tree)
        })
    }));
    let (decision, _tree) = answer.run(initial_state(cs));
    decision
}

//! Base effects and their monadic operations.
//!
//! Everything in this crate is parameterised over a small, fixed family of
//! effects: [`IdentityEffect`] (plain values), [`NonDetEffect`]
//! (nondeterministic choice among finitely many candidates),
//! [`StateEffect`] (a value threaded through a computation) and
//! [`TracedEffect`] (a value paired with an ordered query log). Rust has no
//! higher-kinded types, so the family is encoded with a generic associated
//! type: an [`Effect`] is a type-level tag and `Effect::Of<T>` is the
//! concrete carrier for values of type `T` under that effect.
//!
//! The trait deliberately exposes only `unit` and `bind`; the monoidal
//! product [`pair`] and its iterated form [`sequence_all`] are derived from
//! them, so every effect gets the same left-to-right sequencing.

use std::collections::BTreeSet;
use std::sync::Arc;

/// Bounds required of any value carried under an effect.
///
/// Carriers are cloned freely by the combinators and may be shared across
/// threads, so this is just a shorthand for the usual pile of bounds.
pub trait Value: Clone + Send + Sync + 'static {}

impl<T: Clone + Send + Sync + 'static> Value for T {}

/// A base effect, encoded as a type-level family.
///
/// `Of<T>` is the carrier of `T`-values under the effect. Implementations
/// must satisfy the monad laws up to the effect's own notion of equality
/// (exact for `Identity`, `Stateful` and `Traced`; set-semantic for
/// `NonDet`).
pub trait Effect: 'static {
    /// Carrier of `T`-values under this effect.
    type Of<T: Value>: Value;

    /// Embed a pure value.
    fn unit<T: Value>(x: T) -> Self::Of<T>;

    /// Sequence a computation with a dependent continuation.
    fn bind<T: Value, U: Value, F>(m: Self::Of<T>, f: F) -> Self::Of<U>
    where
        F: Fn(T) -> Self::Of<U> + Send + Sync + 'static;
}

/// Left-to-right monoidal product: run `m`, then `n`, and pair the results.
///
/// Defined as `bind(m, |x| bind(n, |y| unit((x, y))))`; for [`NonDetEffect`]
/// this is the cartesian product in left-major order.
pub fn pair<M: Effect, X: Value, Y: Value>(m: M::Of<X>, n: M::Of<Y>) -> M::Of<(X, Y)> {
    M::bind(m, move |x: X| {
        let x = x.clone();
        M::bind(n.clone(), move |y: Y| M::unit((x.clone(), y)))
    })
}

/// Iterated product: right-nested [`pair`] flattened into a vector.
///
/// The head effect runs outermost; an empty input yields `unit(vec![])`.
pub fn sequence_all<M: Effect, T: Value>(ms: Vec<M::Of<T>>) -> M::Of<Vec<T>> {
    let mut acc: M::Of<Vec<T>> = M::unit(Vec::new());
    for m in ms.into_iter().rev() {
        let tail = acc;
        acc = M::bind(m, move |x: T| {
            let x = x.clone();
            M::bind(tail.clone(), move |rest: Vec<T>| {
                let mut out = Vec::with_capacity(rest.len() + 1);
                out.push(x.clone());
                out.extend(rest);
                M::unit(out)
            })
        });
    }
    acc
}

// ---------------------------------------------------------------------------
// Identity
// ---------------------------------------------------------------------------

/// The trivial effect: `Of<T> = T`.
pub struct IdentityEffect;

impl Effect for IdentityEffect {
    type Of<T: Value> = T;

    fn unit<T: Value>(x: T) -> T {
        x
    }

    fn bind<T: Value, U: Value, F>(m: T, f: F) -> U
    where
        F: Fn(T) -> U + Send + Sync + 'static,
    {
        f(m)
    }
}

// ---------------------------------------------------------------------------
// Nondeterminism
// ---------------------------------------------------------------------------

/// A nonempty, ordered, duplicate-permitting collection of candidates.
///
/// `NonDet` models finite nondeterministic choice. The internal sequence
/// keeps whatever order and duplicates the producing computation generated,
/// but equality (`PartialEq`) is set-semantic: two values compare equal when
/// their deduplicated candidate sets are equal. Use [`NonDet::candidates`]
/// when order or multiplicity matters.
#[derive(Debug, Clone)]
pub struct NonDet<T> {
    candidates: Vec<T>,
}

impl<T> NonDet<T> {
    /// Wrap an ordered candidate sequence.
    ///
    /// # Panics
    ///
    /// Panics if `candidates` is empty; emptiness is not representable.
    pub fn new(candidates: Vec<T>) -> Self {
        assert!(!candidates.is_empty(), "NonDet requires at least one candidate");
        NonDet { candidates }
    }

    /// A single candidate.
    pub fn singleton(x: T) -> Self {
        NonDet { candidates: vec![x] }
    }

    /// The raw candidate sequence, in production order, duplicates intact.
    pub fn candidates(&self) -> &[T] {
        &self.candidates
    }

    /// Consume the wrapper, yielding the raw sequence.
    pub fn into_candidates(self) -> Vec<T> {
        self.candidates
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.candidates.iter()
    }
}

impl<T: Ord> NonDet<T> {
    /// The deduplicated candidate set.
    pub fn to_set(&self) -> BTreeSet<&T> {
        self.candidates.iter().collect()
    }

    /// Set-semantic subset test.
    pub fn is_subset(&self, other: &NonDet<T>) -> bool {
        self.to_set().is_subset(&other.to_set())
    }
}

impl<T: Ord + Clone> NonDet<T> {
    /// A copy with duplicates removed, keeping first occurrences.
    pub fn deduped(&self) -> NonDet<T> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in &self.candidates {
            if seen.insert(c.clone()) {
                out.push(c.clone());
            }
        }
        NonDet { candidates: out }
    }
}

/// Set-semantic equality: order and multiplicity are ignored.
impl<T: Ord> PartialEq for NonDet<T> {
    fn eq(&self, other: &Self) -> bool {
        self.to_set() == other.to_set()
    }
}

impl<T: Ord> Eq for NonDet<T> {}

impl<T> IntoIterator for NonDet<T> {
    type Item = T;
    type IntoIter = std::vec::IntoIter<T>;

    fn into_iter(self) -> Self::IntoIter {
        self.candidates.into_iter()
    }
}

/// Finite nondeterminism over [`NonDet`].
pub struct NonDetEffect;

impl Effect for NonDetEffect {
    type Of<T: Value> = NonDet<T>;

    fn unit<T: Value>(x: T) -> NonDet<T> {
        NonDet::singleton(x)
    }

    fn bind<T: Value, U: Value, F>(m: NonDet<T>, f: F) -> NonDet<U>
    where
        F: Fn(T) -> NonDet<U> + Send + Sync + 'static,
    {
        let mut out = Vec::new();
        for x in m.candidates {
            out.extend(f(x).candidates);
        }
        NonDet::new(out)
    }
}

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

/// A state-threading computation: a pure function from `S` to `(T, S)`.
///
/// Running the same `Stateful` twice from the same state yields identical
/// results; there is no interior mutation.
pub struct Stateful<S, T> {
    run: Arc<dyn Fn(S) -> (T, S) + Send + Sync>,
}

impl<S, T> Stateful<S, T> {
    pub fn new(f: impl Fn(S) -> (T, S) + Send + Sync + 'static) -> Self {
        Stateful { run: Arc::new(f) }
    }

    /// Run on an initial state, producing the value and the final state.
    pub fn run(&self, state: S) -> (T, S) {
        (self.run)(state)
    }
}

impl<S, T> Clone for Stateful<S, T> {
    fn clone(&self) -> Self {
        Stateful { run: Arc::clone(&self.run) }
    }
}

/// State threaded left to right through binds.
pub struct StateEffect<S: Value>(std::marker::PhantomData<S>);

impl<S: Value> Effect for StateEffect<S> {
    type Of<T: Value> = Stateful<S, T>;

    fn unit<T: Value>(x: T) -> Stateful<S, T> {
        Stateful::new(move |s| (x.clone(), s))
    }

    fn bind<T: Value, U: Value, F>(m: Stateful<S, T>, f: F) -> Stateful<S, U>
    where
        F: Fn(T) -> Stateful<S, U> + Send + Sync + 'static,
    {
        Stateful::new(move |s| {
            let (x, s) = m.run(s);
            f(x).run(s)
        })
    }
}

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

/// One recorded query: the bit sequence that was asked and the answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub query_input: Vec<bool>,
    pub query_result: bool,
}

/// An ordered record of query events emitted during a traced search.
pub type TraceLog = Vec<TraceEvent>;

/// A value together with the ordered log of queries made to produce it.
///
/// The log is append-only: `bind` concatenates logs in evaluation order and
/// never influences the value component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traced<T> {
    value: T,
    log: TraceLog,
}

impl<T> Traced<T> {
    pub fn new(value: T, log: TraceLog) -> Self {
        Traced { value, log }
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    pub fn log(&self) -> &[TraceEvent] {
        &self.log
    }

    pub fn into_parts(self) -> (T, TraceLog) {
        (self.value, self.log)
    }
}

/// Deterministic logging of query events.
pub struct TracedEffect;

impl Effect for TracedEffect {
    type Of<T: Value> = Traced<T>;

    fn unit<T: Value>(x: T) -> Traced<T> {
        Traced { value: x, log: Vec::new() }
    }

    fn bind<T: Value, U: Value, F>(m: Traced<T>, f: F) -> Traced<U>
    where
        F: Fn(T) -> Traced<U> + Send + Sync + 'static,
    {
        let mut next = f(m.value);
        let mut log = m.log;
        log.append(&mut next.log);
        Traced { value: next.value, log }
    }
}

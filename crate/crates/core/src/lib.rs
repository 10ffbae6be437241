//! Selection-function search: quantifiers, selection functions and their
//! products over a small family of base effects, applied to SAT solving and
//! backward induction for nondeterministic sequential games.
//!
//! The crate is organised as four layers:
//!
//! * [`effect`] — the base effects (identity, nondeterminism, state, trace)
//!   with `unit`, `bind` and the derived monoidal product;
//! * [`select`] — selection functions and quantifiers over those effects,
//!   the morphism between them, and binary/iterated products;
//! * [`sat`] — SAT decision and witness search via quantifier/selection
//!   products, a DPLL variant with unit propagation over an explicit
//!   recursion tree, and a DIMACS CNF parser;
//! * [`games`] — nondeterministic sequential games, move/outcome policies,
//!   rationality and optimality checkers, and backward induction via the
//!   selection product over nondeterminism.
//!
//! ```
//! use selsearch::sat::{sat_decide, sat_find};
//!
//! assert!(sat_decide(2, |xs| xs[0] ^ xs[1]));
//! assert_eq!(sat_find(2, |xs| xs[0] && xs[1]), vec![true, true]);
//! ```

pub mod effect;
pub mod games;
pub mod sat;
pub mod select;

pub use effect::{
    pair, sequence_all, Effect, IdentityEffect, NonDet, NonDetEffect, StateEffect, Stateful,
    TraceEvent, TraceLog, Traced, TracedEffect, Value,
};
pub use select::{bounded_binary_search, Context, Quantifier, SelectionFn};

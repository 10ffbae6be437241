//! Rationality and realism checks by full context enumeration.
//!
//! A context over a move set assigns each move a nonempty subset of the
//! outcome universe, so there are `(2^|U| - 1)^|moves|` of them; the
//! checkers enumerate all of them and refuse (rather than answer) when the
//! space is too large to do so.

use std::sync::Arc;

use super::policy::run_admissible;
use super::solve::rational_on_context;
use super::{GameError, MoveIx, MovePolicy, Outcome, OutcomePolicy};
use crate::effect::NonDet;
use crate::select::Context;

/// Both the move count and the outcome universe of an enumerating check
/// must stay at or below this.
pub const ENUMERATION_CAP: usize = 4;

fn check_cap(moves: usize, universe: usize) -> Result<(), GameError> {
    if moves > ENUMERATION_CAP || universe > ENUMERATION_CAP {
        return Err(GameError::EnumerationTooLarge { moves, universe, cap: ENUMERATION_CAP });
    }
    Ok(())
}

/// Every context over `move_count` moves: each move independently mapped
/// to one of the nonempty subsets of `universe`.
fn enumerate_context_tables(move_count: usize, universe: &[Outcome]) -> Vec<Vec<NonDet<Outcome>>> {
    let subsets: Vec<NonDet<Outcome>> = (1u32..1 << universe.len())
        .map(|mask| {
            NonDet::new(
                universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &r)| r)
                    .collect(),
            )
        })
        .collect();
    let mut tables = vec![Vec::new()];
    for _ in 0..move_count {
        tables = tables
            .into_iter()
            .flat_map(|t: Vec<NonDet<Outcome>>| {
                subsets.iter().map(move |s| {
                    let mut t2 = t.clone();
                    t2.push(s.clone());
                    t2
                })
            })
            .collect();
    }
    tables
}

fn validated_universe(universe: &[Outcome]) -> Result<Vec<Outcome>, GameError> {
    let u = super::dedup_stable(universe.to_vec());
    if u.is_empty() {
        return Err(GameError::InvalidGame("outcome universe must be nonempty".into()));
    }
    Ok(u)
}

/// Is `policy` rational for `outcome_policy`: on every context over the
/// universe, does every outcome reachable from a selected move land in the
/// good set?
pub fn is_rational(
    policy: &MovePolicy,
    outcome_policy: &OutcomePolicy,
    universe: &[Outcome],
) -> Result<bool, GameError> {
    if policy.move_count() != outcome_policy.move_count() {
        return Err(GameError::InvalidGame("policies disagree on the move count".into()));
    }
    let universe = validated_universe(universe)?;
    check_cap(policy.move_count(), universe.len())?;
    run_admissible(|| {
        for table in enumerate_context_tables(policy.move_count(), &universe) {
            let table = Arc::new(table);
            let ctx = Context::new(move |m: MoveIx| table[m].clone());
            if !rational_on_context(policy, outcome_policy, ctx) {
                return false;
            }
        }
        true
    })
}

/// Is `outcome_policy` realistic: on every context over the universe, is
/// there a move whose reachable outcomes are all good?
pub fn is_realistic(
    outcome_policy: &OutcomePolicy,
    universe: &[Outcome],
) -> Result<bool, GameError> {
    let universe = validated_universe(universe)?;
    let moves = outcome_policy.move_count();
    check_cap(moves, universe.len())?;
    run_admissible(|| {
        for table in enumerate_context_tables(moves, &universe) {
            let shared = Arc::new(table);
            let t = Arc::clone(&shared);
            let ctx = Context::new(move |m: MoveIx| t[m].clone());
            let good = outcome_policy.run(ctx);
            let witness = (0..moves).any(|m| shared[m].is_subset(&good));
            if !witness {
                return false;
            }
        }
        true
    })
}

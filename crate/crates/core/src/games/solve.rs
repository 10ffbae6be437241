//! Strategy profiles, backward induction and the optimality checker.

use std::sync::Arc;

use super::policy::{run_admissible, selected_outcomes};
use super::{cartesian, dedup_stable, Game, GameError, MoveIx, MovePolicy, Outcome, OutcomePolicy, Play};
use crate::effect::NonDet;
use crate::select::{Context, SelectionFn};

/// A single player's strategy: a total function from the moves observed
/// so far (one per earlier player) to a nonempty set of moves.
pub type Strategy = Arc<dyn Fn(&[MoveIx]) -> NonDet<MoveIx> + Send + Sync>;

/// One [`Strategy`] per player.
pub struct StrategyProfile {
    strategies: Vec<Strategy>,
}

impl Clone for StrategyProfile {
    fn clone(&self) -> Self {
        StrategyProfile { strategies: self.strategies.clone() }
    }
}

impl StrategyProfile {
    pub fn new(strategies: Vec<Strategy>) -> Self {
        StrategyProfile { strategies }
    }

    /// Build a profile from plain closures, one per player.
    pub fn from_fns<F>(fs: Vec<F>) -> Self
    where
        F: Fn(&[MoveIx]) -> NonDet<MoveIx> + Send + Sync + 'static,
    {
        StrategyProfile {
            strategies: fs.into_iter().map(|f| Arc::new(f) as Strategy).collect(),
        }
    }

    /// The backward-induction profile for the given move policies: player
    /// `i`'s strategy is the `i`-th projection of the iterated selection
    /// product of the remaining players' policies, applied to the outcome
    /// function partially applied to the observed moves.
    pub fn backward_induction(policies: &[MovePolicy], game: &Game) -> StrategyProfile {
        let strategies = (0..game.players())
            .map(|_i| {
                let policies = policies.to_vec();
                let game = game.clone();
                Arc::new(move |observed: &[MoveIx]| bi_strategy_moves(&policies, &game, observed))
                    as Strategy
            })
            .collect();
        StrategyProfile { strategies }
    }

    pub fn player_count(&self) -> usize {
        self.strategies.len()
    }

    /// The moves player `player` may choose having observed `observed`
    /// (which must contain one move per earlier player).
    pub fn moves(&self, player: usize, observed: &[MoveIx]) -> NonDet<MoveIx> {
        debug_assert_eq!(observed.len(), player);
        (self.strategies[player])(observed)
    }
}

/// The product of the remaining policies applied to the partially applied
/// outcome function, projected to the next player's coordinate.
/// Admissibility failures are recorded for the caller's guard.
fn bi_strategy_moves(policies: &[MovePolicy], game: &Game, prefix: &[MoveIx]) -> NonDet<MoveIx> {
    let i = prefix.len();
    assert!(i < game.players(), "prefix already covers every player");
    let selections: Vec<SelectionFn<MoveIx, Outcome, _>> =
        policies[i..].iter().map(|p| p.selection().clone()).collect();
    let product = SelectionFn::sequence(selections);
    let g = game.clone();
    let pre = prefix.to_vec();
    let plays = product.run(Context::new(move |rest: Vec<MoveIx>| {
        let mut full = pre.clone();
        full.extend(rest);
        g.outcome_set(&full)
    }));
    NonDet::new(dedup_stable(
        plays.into_candidates().into_iter().map(|rest| rest[0]).collect(),
    ))
}

/// Backward-induction strategy for the player after `prefix`: the move set
/// that player may choose under the product of the remaining policies.
pub fn backward_induction_strategy(
    policies: &[MovePolicy],
    game: &Game,
    prefix: &[MoveIx],
) -> Result<NonDet<MoveIx>, GameError> {
    run_admissible(|| bi_strategy_moves(policies, game, prefix))
}

/// The set of complete plays that may occur under the backward-induction
/// profile: the full selection product applied to the outcome function,
/// deduplicated.
///
/// ```
/// use selsearch::games::{choice_fn, example_game, optimal_plays, ChoiceKind, MovePolicy};
///
/// let game = example_game();
/// let policies = vec![
///     MovePolicy::argopt(choice_fn(ChoiceKind::RiskyMax, None), 2),
///     MovePolicy::argopt(choice_fn(ChoiceKind::RiskyMin, None), 2),
/// ];
/// let plays = optimal_plays(&policies, &game).unwrap();
/// assert_eq!(game.play_names(&plays.candidates()[0]), "Risky Risky");
/// ```
pub fn optimal_plays(policies: &[MovePolicy], game: &Game) -> Result<NonDet<Play>, GameError> {
    assert_eq!(policies.len(), game.players(), "one policy per player");
    run_admissible(|| {
        let selections: Vec<SelectionFn<MoveIx, Outcome, _>> =
            policies.iter().map(|p| p.selection().clone()).collect();
        let product = SelectionFn::sequence(selections);
        let g = game.clone();
        let plays = product.run(Context::new(move |play: Vec<MoveIx>| g.outcome_set(&play)));
        NonDet::new(dedup_stable(plays.into_candidates()))
    })
}

/// Behaviour sets: for each remaining player `j`, the set of moves `j`
/// might make under `profile` following `prefix`.
///
/// Built inductively: player `j`'s set collects the strategy's choices
/// over every combination of earlier behaviour sets (their cartesian
/// product, not just strategy-consistent chains).
pub fn behaviour_sets(game: &Game, profile: &StrategyProfile, prefix: &[MoveIx]) -> Vec<NonDet<MoveIx>> {
    let n = game.players();
    assert!(prefix.len() <= n, "prefix longer than the game");
    let mut sets: Vec<NonDet<MoveIx>> = Vec::new();
    for j in prefix.len()..n {
        let mut collected = Vec::new();
        for combo in cartesian(&sets) {
            let mut observed = prefix.to_vec();
            observed.extend(combo);
            collected.extend(profile.moves(j, &observed).into_candidates());
        }
        sets.push(NonDet::new(dedup_stable(collected)));
    }
    sets
}

/// The outcomes that may result from playing `profile` after `prefix`:
/// the union of the outcome sets over every completion drawn from the
/// behaviour sets.
pub fn profile_outcomes(game: &Game, profile: &StrategyProfile, prefix: &[MoveIx]) -> NonDet<Outcome> {
    if prefix.len() == game.players() {
        return game.outcome_set(prefix);
    }
    let sets = behaviour_sets(game, profile, prefix);
    let mut collected = Vec::new();
    for combo in cartesian(&sets) {
        let mut full = prefix.to_vec();
        full.extend(combo);
        collected.extend(game.outcome_set(&full).into_candidates());
    }
    NonDet::new(dedup_stable(collected))
}

/// Check the optimality condition: at every partial play (of every length,
/// reachable or not) the outcomes the profile may produce are a subset of
/// what the next player's outcome policy calls good, in the context where
/// the remaining players follow the profile.
pub fn is_optimal(
    game: &Game,
    profile: &StrategyProfile,
    outcome_policies: &[OutcomePolicy],
) -> Result<bool, GameError> {
    assert_eq!(outcome_policies.len(), game.players(), "one outcome policy per player");
    run_admissible(|| {
        for (i, outcome_policy) in outcome_policies.iter().enumerate() {
            for prefix in game.partial_plays(i) {
                let may_happen = profile_outcomes(game, profile, &prefix);
                let g = game.clone();
                let pr = profile.clone();
                let pre = prefix.clone();
                let ctx = Context::new(move |x: MoveIx| {
                    let mut extended = pre.clone();
                    extended.push(x);
                    profile_outcomes(&g, &pr, &extended)
                });
                let good = outcome_policy.run(ctx);
                if !may_happen.is_subset(&good) {
                    return false;
                }
            }
        }
        true
    })
}

/// Rationality of `policy` against `outcome_policy` on one explicit
/// context (used by the enumerating checker and tests): every outcome
/// reachable from a selected move is good.
pub(crate) fn rational_on_context(
    policy: &MovePolicy,
    outcome_policy: &OutcomePolicy,
    ctx: Context<MoveIx, Outcome, crate::effect::NonDetEffect>,
) -> bool {
    let lhs = selected_outcomes(policy, ctx.clone());
    let rhs = outcome_policy.run(ctx);
    lhs.is_subset(&rhs)
}

//! Move and outcome policies, and the choice functions that build them.

use std::cell::RefCell;
use std::sync::Arc;

use super::{GameError, MoveIx, Outcome};
use crate::effect::{Effect, NonDet, NonDetEffect};
use crate::select::{Context, Quantifier, SelectionFn};

thread_local! {
    static ADMISSIBILITY_FAILURE: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn record_failure(context: String) {
    ADMISSIBILITY_FAILURE.with(|slot| {
        let mut slot = slot.borrow_mut();
        if slot.is_none() {
            *slot = Some(context);
        }
    });
}

/// Run `f`, surfacing the first admissibility failure any policy hit.
///
/// Selection evaluation has no error channel, so a failing choice function
/// records the offending context here and falls back to the full move set;
/// the garbage result is discarded when the failure is reported. Nested
/// scopes see only their own failures.
pub(crate) fn run_admissible<T>(f: impl FnOnce() -> T) -> Result<T, GameError> {
    let saved = ADMISSIBILITY_FAILURE.with(|slot| slot.borrow_mut().take());
    let value = f();
    let failure = ADMISSIBILITY_FAILURE.with(|slot| {
        std::mem::replace(&mut *slot.borrow_mut(), saved)
    });
    match failure {
        Some(context) => Err(GameError::NoAdmissibleMove { context }),
        None => Ok(value),
    }
}

fn describe_pairs(pairs: &[ChoicePair]) -> String {
    let rows: Vec<String> = pairs
        .iter()
        .map(|(m, outs)| format!("move {m} -> {:?}", outs.candidates()))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// What a choice function sees per move: the move and the outcomes it
/// may lead to.
pub type ChoicePair = (MoveIx, NonDet<Outcome>);

type ChooseRun = Arc<dyn Fn(&[ChoicePair]) -> Result<ChoicePair, String> + Send + Sync>;

/// A rule choosing one `(move, outcome set)` pair from a nonempty list.
///
/// Total as a function, but allowed to reject every candidate (the
/// cautious rules do when their filter empties the list), in which case it
/// reports the offending context.
pub struct ChoiceFn {
    choose: ChooseRun,
}

impl Clone for ChoiceFn {
    fn clone(&self) -> Self {
        ChoiceFn { choose: Arc::clone(&self.choose) }
    }
}

impl ChoiceFn {
    /// Wrap a custom chooser. On success the returned pair must be one of
    /// the inputs; the `Err` string describes why nothing was admissible.
    pub fn from_fn(
        f: impl Fn(&[ChoicePair]) -> Result<ChoicePair, String> + Send + Sync + 'static,
    ) -> Self {
        ChoiceFn { choose: Arc::new(f) }
    }

    pub fn apply(&self, pairs: &[ChoicePair]) -> Result<ChoicePair, String> {
        assert!(!pairs.is_empty(), "choice functions take nonempty input");
        (self.choose)(pairs)
    }
}

/// The four named choice rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoiceKind {
    /// Maximise the maximum possible outcome.
    RiskyMax,
    /// Minimise the minimum possible outcome.
    RiskyMin,
    /// [`ChoiceKind::RiskyMax`] among moves whose outcomes all stay at or
    /// above the low bound.
    CautiousMax,
    /// [`ChoiceKind::RiskyMin`] among moves whose outcomes all stay at or
    /// below the high bound.
    CautiousMin,
}

impl std::fmt::Display for ChoiceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ChoiceKind::RiskyMax => "riskymax",
            ChoiceKind::RiskyMin => "riskymin",
            ChoiceKind::CautiousMax => "cautiousmax",
            ChoiceKind::CautiousMin => "cautiousmin",
        };
        f.write_str(name)
    }
}

fn set_max(outs: &NonDet<Outcome>) -> Outcome {
    *outs.candidates().iter().max().expect("outcome sets are nonempty")
}

fn set_min(outs: &NonDet<Outcome>) -> Outcome {
    *outs.candidates().iter().min().expect("outcome sets are nonempty")
}

/// Build one of the named choice functions.
///
/// `cautious_bounds` gives `(low, high)` for the cautious variants,
/// defaulting to `(-1, 1)`. Ties resolve to the last candidate for the
/// max rules and the first for the min rules, matching the usual
/// left-fold maximum/minimum.
pub fn choice_fn(kind: ChoiceKind, cautious_bounds: Option<(Outcome, Outcome)>) -> ChoiceFn {
    let (low, high) = cautious_bounds.unwrap_or((-1, 1));
    ChoiceFn::from_fn(move |pairs| {
        let admissible: Vec<&ChoicePair> = match kind {
            ChoiceKind::RiskyMax | ChoiceKind::RiskyMin => pairs.iter().collect(),
            ChoiceKind::CautiousMax => pairs
                .iter()
                .filter(|(_, outs)| outs.candidates().iter().all(|&r| r >= low))
                .collect(),
            ChoiceKind::CautiousMin => pairs
                .iter()
                .filter(|(_, outs)| outs.candidates().iter().all(|&r| r <= high))
                .collect(),
        };
        let chosen = match kind {
            ChoiceKind::RiskyMax | ChoiceKind::CautiousMax => {
                admissible.iter().max_by_key(|(_, outs)| set_max(outs))
            }
            ChoiceKind::RiskyMin | ChoiceKind::CautiousMin => {
                admissible.iter().min_by_key(|(_, outs)| set_min(outs))
            }
        };
        match chosen {
            Some(&pair) => Ok(pair.clone()),
            None => Err(describe_pairs(pairs)),
        }
    })
}

/// A player's move policy: a selection function over nondeterminism,
/// together with the size of the player's move set.
pub struct MovePolicy {
    selection: SelectionFn<MoveIx, Outcome, NonDetEffect>,
    move_count: usize,
}

impl Clone for MovePolicy {
    fn clone(&self) -> Self {
        MovePolicy { selection: self.selection.clone(), move_count: self.move_count }
    }
}

impl MovePolicy {
    /// Convert a choice function into a move policy over `move_count`
    /// moves: evaluate the context on every move in set order, let the
    /// choice function pick a pair, select that move.
    ///
    /// If the choice function rejects everything the failure is recorded
    /// for the enclosing solver to report and the full move set is
    /// returned so evaluation can continue.
    pub fn argopt(choice: ChoiceFn, move_count: usize) -> MovePolicy {
        assert!(move_count > 0, "move sets are nonempty");
        let selection = SelectionFn::new(move |p: Context<MoveIx, Outcome, NonDetEffect>| {
            let pairs: Vec<ChoicePair> = (0..move_count).map(|m| (m, p.eval(m))).collect();
            match choice.apply(&pairs) {
                Ok((m, _)) => {
                    debug_assert!(m < move_count, "choice must pick an input move");
                    NonDet::singleton(m)
                }
                Err(context) => {
                    record_failure(context);
                    NonDet::new((0..move_count).collect())
                }
            }
        });
        MovePolicy { selection, move_count }
    }

    /// Wrap an arbitrary selection function as a policy.
    pub fn from_selection(
        selection: SelectionFn<MoveIx, Outcome, NonDetEffect>,
        move_count: usize,
    ) -> MovePolicy {
        MovePolicy { selection, move_count }
    }

    /// Build from a parsed [`PolicySpec`](super::PolicySpec).
    pub fn from_spec(spec: &super::PolicySpec, move_count: usize) -> MovePolicy {
        MovePolicy::argopt(choice_fn(spec.kind, spec.bounds), move_count)
    }

    pub fn move_count(&self) -> usize {
        self.move_count
    }

    pub fn selection(&self) -> &SelectionFn<MoveIx, Outcome, NonDetEffect> {
        &self.selection
    }

    pub fn run(&self, ctx: Context<MoveIx, Outcome, NonDetEffect>) -> NonDet<MoveIx> {
        self.selection.run(ctx)
    }

    /// The outcome policy this move policy induces: good outcomes are
    /// exactly those reachable from a selected move,
    /// `p ↦ union over x in policy(p) of p(x)`.
    pub fn induced_outcome_policy(&self) -> OutcomePolicy {
        OutcomePolicy {
            quantifier: self.selection.to_quantifier(),
            move_count: self.move_count,
        }
    }
}

/// A player's outcome policy: a quantifier over nondeterminism naming the
/// good outcomes for each context.
pub struct OutcomePolicy {
    quantifier: Quantifier<MoveIx, Outcome, NonDetEffect>,
    move_count: usize,
}

impl Clone for OutcomePolicy {
    fn clone(&self) -> Self {
        OutcomePolicy { quantifier: self.quantifier.clone(), move_count: self.move_count }
    }
}

impl OutcomePolicy {
    pub fn from_quantifier(
        quantifier: Quantifier<MoveIx, Outcome, NonDetEffect>,
        move_count: usize,
    ) -> OutcomePolicy {
        OutcomePolicy { quantifier, move_count }
    }

    pub fn move_count(&self) -> usize {
        self.move_count
    }

    pub fn run(&self, ctx: Context<MoveIx, Outcome, NonDetEffect>) -> NonDet<Outcome> {
        self.quantifier.run(ctx)
    }
}

/// Judge a move policy and a context: the set of outcomes that may result
/// from a selected move, `{r in p(x) | x in policy(p)}`.
pub(crate) fn selected_outcomes(
    policy: &MovePolicy,
    ctx: Context<MoveIx, Outcome, NonDetEffect>,
) -> NonDet<Outcome> {
    let ctx2 = ctx.clone();
    NonDetEffect::bind(policy.run(ctx), move |m| ctx2.eval(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outs(xs: &[Outcome]) -> NonDet<Outcome> {
        NonDet::new(xs.to_vec())
    }

    #[test]
    fn risky_rules_pick_extreme_sets() {
        let pairs = vec![(0, outs(&[0])), (1, outs(&[-2, 2]))];
        let (m, _) = choice_fn(ChoiceKind::RiskyMax, None).apply(&pairs).unwrap();
        assert_eq!(m, 1);
        let (m, _) = choice_fn(ChoiceKind::RiskyMin, None).apply(&pairs).unwrap();
        assert_eq!(m, 1);
    }

    #[test]
    fn cautious_rules_filter_then_choose() {
        let pairs = vec![(0, outs(&[0])), (1, outs(&[-2, 2]))];
        let (m, _) = choice_fn(ChoiceKind::CautiousMax, None).apply(&pairs).unwrap();
        assert_eq!(m, 0, "move 1 risks -2 < -1");

        let err = choice_fn(ChoiceKind::CautiousMin, None)
            .apply(&[(0, outs(&[2]))])
            .unwrap_err();
        assert!(err.contains("move 0"));
    }

    #[test]
    fn cautious_bounds_are_parameters() {
        let pairs = vec![(0, outs(&[0])), (1, outs(&[-2, 2]))];
        let wide = choice_fn(ChoiceKind::CautiousMax, Some((-2, 2)));
        let (m, _) = wide.apply(&pairs).unwrap();
        assert_eq!(m, 1, "with low = -2 the risky move is admissible");
    }

    #[test]
    fn tie_break_is_last_for_max_first_for_min() {
        let tied = vec![(0, outs(&[-1, 1])), (1, outs(&[0, 1]))];
        let (m, _) = choice_fn(ChoiceKind::RiskyMax, None).apply(&tied).unwrap();
        assert_eq!(m, 1, "equal maxima resolve to the later pair");

        let tied = vec![(0, outs(&[0, 2])), (1, outs(&[0, 1]))];
        let (m, _) = choice_fn(ChoiceKind::RiskyMin, None).apply(&tied).unwrap();
        assert_eq!(m, 0, "equal minima resolve to the earlier pair");
    }

    #[test]
    fn argopt_selects_singletons() {
        let first = ChoiceFn::from_fn(|pairs| Ok(pairs[0].clone()));
        let policy = MovePolicy::argopt(first, 2);
        let got = policy.run(Context::new(|_| NonDet::singleton(0)));
        assert_eq!(got.candidates(), &[0]);

        let single = MovePolicy::argopt(choice_fn(ChoiceKind::RiskyMax, None), 1);
        let got = single.run(Context::new(|_| outs(&[5, -5])));
        assert_eq!(got.candidates(), &[0]);
    }

    #[test]
    fn argopt_on_example_game_context_prefers_risky() {
        // Player 1's context when player 2 plays cautious-min behind both
        // moves: either way the reachable outcomes are {-1, 0, 1}, and the
        // tie resolves to the later (risky) move.
        let ctx = Context::new(|_m: MoveIx| outs(&[-1, 0, 1]));
        let policy = MovePolicy::argopt(choice_fn(ChoiceKind::RiskyMax, None), 2);
        assert_eq!(policy.run(ctx).candidates(), &[1]);
    }

    #[test]
    fn induced_policy_unions_selected_outcomes() {
        let constant = MovePolicy::from_selection(
            SelectionFn::new(|_| NonDet::singleton(0usize)),
            2,
        );
        let induced = constant.induced_outcome_policy();
        let got = induced.run(Context::new(|m: MoveIx| {
            if m == 0 {
                outs(&[1, 2])
            } else {
                outs(&[9])
            }
        }));
        assert_eq!(got, outs(&[1, 2]));

        let both = MovePolicy::from_selection(
            SelectionFn::new(|_| NonDet::new(vec![0usize, 1])),
            2,
        );
        let got = both.induced_outcome_policy().run(Context::new(|m: MoveIx| {
            if m == 0 {
                outs(&[1])
            } else {
                outs(&[2])
            }
        }));
        assert_eq!(got, outs(&[1, 2]));

        // For an argopt policy the induced set is exactly the chosen
        // move's outcome set.
        let maxer = MovePolicy::argopt(choice_fn(ChoiceKind::RiskyMax, None), 2);
        let ctx = |m: MoveIx| if m == 0 { outs(&[0]) } else { outs(&[-2, 2]) };
        let chosen = maxer.run(Context::new(ctx));
        assert_eq!(chosen.candidates(), &[1]);
        let induced = maxer.induced_outcome_policy().run(Context::new(ctx));
        assert_eq!(induced, outs(&[-2, 2]));
    }

    #[test]
    fn admissibility_failures_surface_through_the_guard() {
        let policy = MovePolicy::argopt(choice_fn(ChoiceKind::CautiousMin, None), 1);
        let result = run_admissible(|| {
            policy.run(Context::new(|_| outs(&[2])))
        });
        assert!(matches!(result, Err(GameError::NoAdmissibleMove { .. })));

        // The guard clears the slot again: a following clean run is Ok.
        let ok = run_admissible(|| 42);
        assert_eq!(ok, Ok(42));
    }
}

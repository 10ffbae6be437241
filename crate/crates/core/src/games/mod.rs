//! Nondeterministic sequential games and backward induction.
//!
//! An `n`-player game fixes a finite ordered move set per player and a
//! total outcome function from complete plays to nonempty sets of integer
//! outcomes. Players are modelled by policies over the nondeterminism
//! effect: a [`MovePolicy`] is a selection function choosing a set of
//! moves for each context, an [`OutcomePolicy`] a quantifier naming the
//! outcomes a player considers good. Backward induction is the iterated
//! selection product of the players' move policies applied to the outcome
//! function; [`is_optimal`] checks the resulting strategy profile against
//! the subset condition at every partial play, reachable or not.
//!
//! Moves are indices into the owning player's move set; display names live
//! on the [`Game`] and only matter for parsing and printing.

mod check;
mod format;
mod policy;
mod solve;

pub use check::{is_rational, is_realistic, ENUMERATION_CAP};
pub use format::{parse_game, policy_kind_from_name, GameParseError, ParsedGame, PolicySpec};
pub use policy::{choice_fn, ChoiceFn, ChoiceKind, ChoicePair, MovePolicy, OutcomePolicy};
pub use solve::{
    backward_induction_strategy, behaviour_sets, is_optimal, optimal_plays, profile_outcomes,
    Strategy, StrategyProfile,
};

use std::collections::BTreeMap;

use crate::effect::NonDet;

/// Game outcomes are integers; the scalar case is the one with named
/// choice functions.
pub type Outcome = i64;

/// A move, as an index into its player's ordered move set.
pub type MoveIx = usize;

/// A complete or partial play: one move index per player, in player order.
pub type Play = Vec<MoveIx>;

/// Errors from game construction, solving and checking.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    /// A cautious choice function filtered every candidate out.
    #[error("no admissible move in context {context}")]
    NoAdmissibleMove { context: String },
    /// A rationality/realism check refused to enumerate a context space
    /// this large; distinct from answering `false`.
    #[error(
        "context enumeration refused: {moves} moves over {universe} outcomes exceeds the cap of {cap}"
    )]
    EnumerationTooLarge { moves: usize, universe: usize, cap: usize },
    #[error("invalid game: {0}")]
    InvalidGame(String),
}

/// A finite nondeterministic sequential game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    move_names: Vec<Vec<String>>,
    outcomes: BTreeMap<Play, Vec<Outcome>>,
}

impl Game {
    /// Build a game from per-player move names and a total outcome table.
    ///
    /// The table must cover every complete play exactly once, with a
    /// nonempty outcome set on each row.
    pub fn new(
        move_names: Vec<Vec<String>>,
        outcome_table: Vec<(Play, Vec<Outcome>)>,
    ) -> Result<Game, GameError> {
        if move_names.is_empty() {
            return Err(GameError::InvalidGame("at least one player required".into()));
        }
        for (i, moves) in move_names.iter().enumerate() {
            if moves.is_empty() {
                return Err(GameError::InvalidGame(format!(
                    "player {} has an empty move set",
                    i + 1
                )));
            }
        }
        let mut outcomes = BTreeMap::new();
        for (play, outs) in outcome_table {
            if play.len() != move_names.len()
                || play.iter().zip(&move_names).any(|(&m, names)| m >= names.len())
            {
                return Err(GameError::InvalidGame(format!("invalid play {play:?}")));
            }
            if outs.is_empty() {
                return Err(GameError::InvalidGame(format!(
                    "empty outcome set for play {play:?}; nonempty outcome set required"
                )));
            }
            if outcomes.insert(play.clone(), outs).is_some() {
                return Err(GameError::InvalidGame(format!("duplicate play {play:?}")));
            }
        }
        let game = Game { move_names, outcomes };
        for play in game.complete_plays() {
            if !game.outcomes.contains_key(&play) {
                return Err(GameError::InvalidGame(format!(
                    "incomplete outcome table: play {play:?} missing"
                )));
            }
        }
        Ok(game)
    }

    pub fn players(&self) -> usize {
        self.move_names.len()
    }

    /// Number of moves available to `player`.
    pub fn move_count(&self, player: usize) -> usize {
        self.move_names[player].len()
    }

    pub fn move_name(&self, player: usize, m: MoveIx) -> &str {
        &self.move_names[player][m]
    }

    /// Resolve a display name to a move index for `player`.
    pub fn move_index(&self, player: usize, name: &str) -> Option<MoveIx> {
        self.move_names[player].iter().position(|n| n == name)
    }

    /// The outcome set of a complete play.
    ///
    /// # Panics
    ///
    /// Panics if `play` is not a complete play of this game; construction
    /// guarantees the table is total over valid plays.
    pub fn outcome_set(&self, play: &[MoveIx]) -> NonDet<Outcome> {
        NonDet::new(
            self.outcomes
                .get(play)
                .unwrap_or_else(|| panic!("play {play:?} outside the game"))
                .clone(),
        )
    }

    /// All partial plays of length `len` (all syntactic prefixes, not just
    /// reachable ones).
    pub fn partial_plays(&self, len: usize) -> Vec<Play> {
        assert!(len <= self.players());
        let mut plays = vec![Vec::new()];
        for player in 0..len {
            plays = plays
                .into_iter()
                .flat_map(|p| {
                    (0..self.move_count(player)).map(move |m| {
                        let mut q = p.clone();
                        q.push(m);
                        q
                    })
                })
                .collect();
        }
        plays
    }

    /// All complete plays.
    pub fn complete_plays(&self) -> Vec<Play> {
        self.partial_plays(self.players())
    }

    /// Render a play as space-separated move names.
    pub fn play_names(&self, play: &[MoveIx]) -> String {
        play.iter()
            .enumerate()
            .map(|(i, &m)| self.move_name(i, m))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The two-player cautious/risky example: both players choose between a
/// safe move and a gamble, outcomes widen as more risk is taken.
///
/// Moves are `Cautious` (0) and `Risky` (1) for both players; outcomes are
/// `{0}` for double caution, `{-1, 0, 1}` for mixed play and
/// `{-2, -1, 0, 1, 2}` for double risk.
pub fn example_game() -> Game {
    let names = vec![
        vec!["Cautious".to_string(), "Risky".to_string()],
        vec!["Cautious".to_string(), "Risky".to_string()],
    ];
    let table = vec![
        (vec![0, 0], vec![0]),
        (vec![0, 1], vec![-1, 0, 1]),
        (vec![1, 0], vec![-1, 0, 1]),
        (vec![1, 1], vec![-2, -1, 0, 1, 2]),
    ];
    Game::new(names, table).expect("example game is well formed")
}

pub(crate) fn dedup_stable<T: Ord + Clone>(xs: Vec<T>) -> Vec<T> {
    let mut seen = std::collections::BTreeSet::new();
    xs.into_iter().filter(|x| seen.insert(x.clone())).collect()
}

/// Cartesian product of candidate lists, left-major, empty input giving
/// the single empty combination.
pub(crate) fn cartesian(sets: &[NonDet<MoveIx>]) -> Vec<Vec<MoveIx>> {
    let mut combos = vec![Vec::new()];
    for s in sets {
        combos = combos
            .iter()
            .flat_map(|c| {
                s.candidates().iter().map(move |&x| {
                    let mut c2 = c.clone();
                    c2.push(x);
                    c2
                })
            })
            .collect();
    }
    combos
}

//! Line-based game description format.
//!
//! ```text
//! # comment
//! players 2
//! moves 1 Cautious Risky
//! moves 2 Cautious Risky
//! outcome Cautious Cautious : 0
//! outcome Cautious Risky : -1 0 1
//! outcome Risky Cautious : -1 0 1
//! outcome Risky Risky : -2 -1 0 1 2
//! policy 1 cautiousmax
//! policy 2 cautiousmin -1 1
//! ```
//!
//! Player indices are 1-based in the file. Every complete play must appear
//! exactly once in the outcome table; policy lines are optional per player
//! and may carry explicit `low high` bounds for the cautious kinds.

use super::{ChoiceKind, Game, Outcome, Play};

/// A parse failure, with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct GameParseError {
    pub line: usize,
    pub message: String,
}

impl GameParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        GameParseError { line, message: message.into() }
    }
}

/// A named policy selection for one player.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolicySpec {
    pub kind: ChoiceKind,
    pub bounds: Option<(Outcome, Outcome)>,
}

/// A parsed game plus any per-player policy lines it carried.
#[derive(Debug, Clone)]
pub struct ParsedGame {
    pub game: Game,
    /// Indexed by player (0-based); `None` where the file named no policy.
    pub policies: Vec<Option<PolicySpec>>,
}

/// Resolve a policy kind name as used in game files and on the command
/// line.
pub fn policy_kind_from_name(name: &str) -> Option<ChoiceKind> {
    match name {
        "riskymax" => Some(ChoiceKind::RiskyMax),
        "riskymin" => Some(ChoiceKind::RiskyMin),
        "cautiousmax" => Some(ChoiceKind::CautiousMax),
        "cautiousmin" => Some(ChoiceKind::CautiousMin),
        _ => None,
    }
}

/// Parse the line-based game format.
pub fn parse_game(text: &str) -> Result<ParsedGame, GameParseError> {
    let mut players: Option<usize> = None;
    let mut move_names: Vec<Option<Vec<String>>> = Vec::new();
    let mut outcome_rows: Vec<(usize, Vec<String>, Vec<Outcome>)> = Vec::new();
    let mut policy_rows: Vec<(usize, usize, PolicySpec)> = Vec::new();
    let mut last_line = 0;

    for (ix, raw) in text.lines().enumerate() {
        let line_no = ix + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        match keyword {
            "players" => {
                if players.is_some() {
                    return Err(GameParseError::new(line_no, "duplicate players line"));
                }
                let n: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| GameParseError::new(line_no, "players needs a count >= 1"))?;
                if tokens.next().is_some() {
                    return Err(GameParseError::new(line_no, "trailing tokens after players"));
                }
                players = Some(n);
                move_names = vec![None; n];
            }
            "moves" => {
                let n = players
                    .ok_or_else(|| GameParseError::new(line_no, "moves before players line"))?;
                let player: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&p| (1..=n).contains(&p))
                    .ok_or_else(|| {
                        GameParseError::new(line_no, format!("moves needs a player in 1..={n}"))
                    })?;
                let names: Vec<String> = tokens.map(str::to_string).collect();
                if names.is_empty() {
                    return Err(GameParseError::new(line_no, "empty move set"));
                }
                if move_names[player - 1].is_some() {
                    return Err(GameParseError::new(
                        line_no,
                        format!("duplicate moves line for player {player}"),
                    ));
                }
                move_names[player - 1] = Some(names);
            }
            "outcome" => {
                let rest: Vec<&str> = tokens.collect();
                let split = rest.iter().position(|&t| t == ":").ok_or_else(|| {
                    GameParseError::new(line_no, "outcome row needs `moves : outcomes`")
                })?;
                let moves: Vec<String> = rest[..split].iter().map(|s| s.to_string()).collect();
                let outs: Result<Vec<Outcome>, _> =
                    rest[split + 1..].iter().map(|t| t.parse::<Outcome>()).collect();
                let outs = outs.map_err(|_| {
                    GameParseError::new(line_no, "outcomes must be integers")
                })?;
                if outs.is_empty() {
                    return Err(GameParseError::new(line_no, "nonempty outcome set required"));
                }
                outcome_rows.push((line_no, moves, outs));
            }
            "policy" => {
                let n = players
                    .ok_or_else(|| GameParseError::new(line_no, "policy before players line"))?;
                let player: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&p| (1..=n).contains(&p))
                    .ok_or_else(|| {
                        GameParseError::new(line_no, format!("policy needs a player in 1..={n}"))
                    })?;
                let kind_name = tokens
                    .next()
                    .ok_or_else(|| GameParseError::new(line_no, "policy needs a kind"))?;
                let kind = policy_kind_from_name(kind_name).ok_or_else(|| {
                    GameParseError::new(line_no, format!("unknown policy kind `{kind_name}`"))
                })?;
                let bounds_tokens: Vec<&str> = tokens.collect();
                let bounds = match bounds_tokens.len() {
                    0 => None,
                    2 => {
                        let low = bounds_tokens[0].parse::<Outcome>();
                        let high = bounds_tokens[1].parse::<Outcome>();
                        match (low, high) {
                            (Ok(l), Ok(h)) => Some((l, h)),
                            _ => {
                                return Err(GameParseError::new(
                                    line_no,
                                    "policy bounds must be two integers",
                                ))
                            }
                        }
                    }
                    _ => {
                        return Err(GameParseError::new(
                            line_no,
                            "policy takes either no bounds or `low high`",
                        ))
                    }
                };
                policy_rows.push((line_no, player - 1, PolicySpec { kind, bounds }));
            }
            other => {
                return Err(GameParseError::new(line_no, format!("unknown directive `{other}`")));
            }
        }
    }

    let n =
        players.ok_or_else(|| GameParseError::new(last_line.max(1), "missing players line"))?;
    let mut names = Vec::with_capacity(n);
    for (i, m) in move_names.into_iter().enumerate() {
        names.push(m.ok_or_else(|| {
            GameParseError::new(last_line.max(1), format!("missing moves line for player {}", i + 1))
        })?);
    }

    let mut table: Vec<(Play, Vec<Outcome>)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line_no, move_words, outs) in outcome_rows {
        if move_words.len() != n {
            return Err(GameParseError::new(
                line_no,
                format!("outcome row names {} moves, expected {n}", move_words.len()),
            ));
        }
        let mut play = Vec::with_capacity(n);
        for (player, word) in move_words.iter().enumerate() {
            let ix = names[player].iter().position(|m| m == word).ok_or_else(|| {
                GameParseError::new(
                    line_no,
                    format!("unknown move `{word}` for player {}", player + 1),
                )
            })?;
            play.push(ix);
        }
        if !seen.insert(play.clone()) {
            return Err(GameParseError::new(line_no, "duplicate play row"));
        }
        table.push((play, outs));
    }

    let game = Game::new(names, table)
        .map_err(|e| GameParseError::new(last_line.max(1), e.to_string()))?;

    let mut policies: Vec<Option<PolicySpec>> = vec![None; n];
    for (line_no, player, spec) in policy_rows {
        if policies[player].is_some() {
            return Err(GameParseError::new(
                line_no,
                format!("duplicate policy line for player {}", player + 1),
            ));
        }
        policies[player] = Some(spec);
    }

    Ok(ParsedGame { game, policies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::example_game;

    const EXAMPLE: &str = "\
# two-player cautious/risky game
players 2
moves 1 Cautious Risky
moves 2 Cautious Risky
outcome Cautious Cautious : 0
outcome Cautious Risky : -1 0 1
outcome Risky Cautious : -1 0 1
outcome Risky Risky : -2 -1 0 1 2
policy 1 cautiousmax
policy 2 cautiousmin
";

    #[test]
    fn round_trips_the_example_game() {
        let parsed = parse_game(EXAMPLE).unwrap();
        assert_eq!(parsed.game, example_game());
        assert_eq!(
            parsed.policies,
            vec![
                Some(PolicySpec { kind: ChoiceKind::CautiousMax, bounds: None }),
                Some(PolicySpec { kind: ChoiceKind::CautiousMin, bounds: None }),
            ]
        );
    }

    #[test]
    fn missing_play_row_is_an_error() {
        let text = EXAMPLE.lines().filter(|l| !l.contains("Risky Risky")).collect::<Vec<_>>().join("\n");
        let err = parse_game(&text).unwrap_err();
        assert!(err.message.contains("incomplete outcome table"), "{}", err.message);
    }

    #[test]
    fn duplicate_play_row_is_an_error() {
        let text = format!("{EXAMPLE}outcome Risky Risky : 7\n");
        let err = parse_game(&text).unwrap_err();
        assert!(err.message.contains("duplicate play row"));
        assert_eq!(err.line, 11);
    }

    #[test]
    fn empty_outcome_set_is_an_error() {
        let text = EXAMPLE.replace("outcome Cautious Cautious : 0", "outcome Cautious Cautious :");
        let err = parse_game(&text).unwrap_err();
        assert!(err.message.contains("nonempty outcome set required"));
    }

    #[test]
    fn unknown_move_and_policy_kind_are_errors() {
        let text = EXAMPLE.replace("outcome Cautious Risky", "outcome Cautious Reckless");
        let err = parse_game(&text).unwrap_err();
        assert!(err.message.contains("unknown move `Reckless`"));

        let text = EXAMPLE.replace("policy 1 cautiousmax", "policy 1 bold");
        let err = parse_game(&text).unwrap_err();
        assert!(err.message.contains("unknown policy kind `bold`"));
    }

    #[test]
    fn policy_bounds_parse() {
        let text = EXAMPLE.replace("policy 1 cautiousmax", "policy 1 cautiousmax -2 2");
        let parsed = parse_game(&text).unwrap();
        assert_eq!(
            parsed.policies[0],
            Some(PolicySpec { kind: ChoiceKind::CautiousMax, bounds: Some((-2, 2)) })
        );
    }

    #[test]
    fn policies_are_optional() {
        let text: String = EXAMPLE.lines().filter(|l| !l.starts_with("policy")).collect::<Vec<_>>().join("\n");
        let parsed = parse_game(&text).unwrap();
        assert_eq!(parsed.policies, vec![None, None]);
    }
}

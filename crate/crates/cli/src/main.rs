//! Command-line front end: SAT solving over DIMACS files and game solving
//! over the line-based game format.
//!
//! Exit statuses follow SAT-solver convention: 10 for satisfiable, 20 for
//! unsatisfiable, 1 for any error; `game-solve` exits 0 on success.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use selsearch::effect::TraceLog;
use selsearch::games::{
    is_optimal, optimal_plays, parse_game, policy_kind_from_name, Game, MovePolicy, PolicySpec,
    StrategyProfile,
};
use selsearch::sat::{dpll, eval_clauses, parse_dimacs, sat_decide, sat_find, verbose_sat, ClauseSet};

#[derive(Parser)]
#[command(name = "selsearch", version, about = "Selection-function search: SAT and sequential games")]
struct Cli {
    /// Seed for randomized harness entry points; the shipped subcommands
    /// are deterministic and do not consume it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Continuation product of existential quantifiers.
    Naive,
    /// Unit propagation over the recursion-tree state.
    Dpll,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability of a DIMACS CNF file (exit 10 SAT / 20 UNSAT).
    SatDecide {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Naive)]
        method: Method,
        /// Log every query of the search (naive method only).
        #[arg(long)]
        trace: bool,
    },
    /// Find a satisfying assignment of a DIMACS CNF file.
    SatFind {
        file: PathBuf,
        /// Log every query of the search.
        #[arg(long)]
        trace: bool,
    },
    /// Print the optimal plays of a game description.
    GameSolve {
        file: PathBuf,
        /// Per-player policy kinds, overriding any policy lines in the
        /// file: riskymax, riskymin, cautiousmax or cautiousmin.
        #[arg(long, num_args = 1..)]
        policies: Vec<String>,
        /// Also check the backward-induction profile against the induced
        /// outcome policies and print the verdict.
        #[arg(long)]
        check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::SatDecide { file, method, trace } => {
            let cs = load_cnf(&file)?;
            let sat = if trace {
                if method == Method::Dpll {
                    return Err("--trace is only available with the naive method".into());
                }
                let witness = traced_find(&cs);
                eval_clauses(&cs, &witness)
            } else {
                match method {
                    Method::Naive => {
                        let q = cs.clone();
                        sat_decide(cs.var_count(), move |a| eval_clauses(&q, a))
                    }
                    Method::Dpll => dpll(&cs),
                }
            };
            println!("{}", if sat { "SAT" } else { "UNSAT" });
            Ok(sat_status(sat))
        }
        Command::SatFind { file, trace } => {
            let cs = load_cnf(&file)?;
            let witness = if trace {
                traced_find(&cs)
            } else {
                let q = cs.clone();
                sat_find(cs.var_count(), move |a| eval_clauses(&q, a))
            };
            let sat = eval_clauses(&cs, &witness);
            if sat {
                println!("SAT");
                println!("{}", dimacs_witness(&witness));
            } else {
                println!("UNSAT");
            }
            Ok(sat_status(sat))
        }
        Command::GameSolve { file, policies, check } => {
            let text = read_file(&file)?;
            let parsed = parse_game(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let game = parsed.game;
            let specs = resolve_policies(&game, parsed.policies, &policies)?;
            let move_policies: Vec<MovePolicy> = specs
                .iter()
                .enumerate()
                .map(|(i, spec)| MovePolicy::from_spec(spec, game.move_count(i)))
                .collect();
            let plays = optimal_plays(&move_policies, &game).map_err(|e| e.to_string())?;
            for play in plays.candidates() {
                println!("{}", game.play_names(play));
            }
            if check {
                let profile = StrategyProfile::backward_induction(&move_policies, &game);
                let induced: Vec<_> =
                    move_policies.iter().map(|e| e.induced_outcome_policy()).collect();
                let verdict =
                    is_optimal(&game, &profile, &induced).map_err(|e| e.to_string())?;
                println!("optimal: {verdict}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_cnf(path: &PathBuf) -> Result<ClauseSet, String> {
    let text = read_file(path)?;
    parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn sat_status(sat: bool) -> ExitCode {
    ExitCode::from(if sat { 10 } else { 20 })
}

/// Verbose search: print one line per query plus the final count, return
/// the assignment.
fn traced_find(cs: &ClauseSet) -> Vec<bool> {
    let q = cs.clone();
    let (witness, log) = verbose_sat(cs.var_count(), move |a| eval_clauses(&q, a));
    print_trace(&log);
    witness
}

fn print_trace(log: &TraceLog) {
    for event in log {
        let bits: String =
            event.query_input.iter().map(|&b| if b { '1' } else { '0' }).collect();
        println!("{bits} -> {}", event.query_result);
    }
    println!("queries {}", log.len());
}

/// The satisfying assignment as space-separated DIMACS literals.
fn dimacs_witness(witness: &[bool]) -> String {
    witness
        .iter()
        .enumerate()
        .map(|(i, &b)| if b { format!("{}", i + 1) } else { format!("-{}", i + 1) })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Per-player policy resolution: command-line names override file policy
/// lines; every player must end up with one.
fn resolve_policies(
    game: &Game,
    from_file: Vec<Option<PolicySpec>>,
    from_cli: &[String],
) -> Result<Vec<PolicySpec>, String> {
    if !from_cli.is_empty() && from_cli.len() != game.players() {
        return Err(format!(
            "--policies names {} kinds, the game has {} players",
            from_cli.len(),
            game.players()
        ));
    }
    (0..game.players())
        .map(|i| {
            if let Some(name) = from_cli.get(i) {
                let kind = policy_kind_from_name(name)
                    .ok_or_else(|| format!("unknown policy kind `{name}`"))?;
                Ok(PolicySpec { kind, bounds: None })
            } else {
                from_file[i]
                    .ok_or_else(|| format!("no policy for player {}", i + 1))
            }
        })
        .collect()
}

//! `omega game play` and `omega tree-game play`.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use omega_core::automata::{parse_nba, Budget};
use omega_core::choquet::{
    parse_script, play, Adversary, GameState, NestedPinf, Outcome, ShrinkingClopens, StabilizingSingleton,
};
use omega_core::trees::choquet::{
    parse_tree_script, play_tree, ExistsPathRefinements, TreeAdversary, TreeGameState, TreeShrinkingClopens,
    TreeStabilizingSingleton,
};
use omega_core::trees::{Bta, RegularTree};
use omega_core::words::{Alphabet, UpWord};
use omega_core::Error;

use crate::report::{in_file, read_file, CliResult, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WordAdversary {
    Shrinking,
    Singleton,
    Nested,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TreeAdversaryKind {
    Shrinking,
    Singleton,
    ExistsPath,
}

#[derive(Debug, Args)]
pub struct GameArgs {
    /// Moves of Player 1, one per line: `round <i>: sigma=<word> L=<file>`.
    #[arg(long, conflicts_with = "adversary", required_unless_present = "adversary")]
    pub script: Option<PathBuf>,
    /// A built-in Player 1 instead of a script.
    #[arg(long, value_enum)]
    pub adversary: Option<WordAdversary>,
    /// The word played by the singleton adversary.
    #[arg(long, default_value = "(01)w")]
    pub word: String,
    #[arg(long, default_value_t = 5)]
    pub rounds: usize,
    /// Skip the containment checks of Player 1's sets.
    #[arg(long)]
    pub no_containment_checks: bool,
    /// Accepted for compatibility; the report is always JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TreeGameArgs {
    /// Moves of Player 1, one per line: `round <i>: tree=<file> L=<file>`.
    #[arg(long, conflicts_with = "adversary", required_unless_present = "adversary")]
    pub script: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub adversary: Option<TreeAdversaryKind>,
    /// The tree file played by the singleton adversary; the all-ones tree by default.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub rounds: usize,
    #[arg(long)]
    pub json: bool,
}

/// Script references are resolved against the script's directory.
fn resolve(script: &Path, reference: &str) -> PathBuf {
    script.parent().unwrap_or(Path::new(".")).join(reference)
}

/// Reads a referenced file, reporting failures as errors of the script.
fn load_ref<T>(script: &Path, reference: &str, parse: impl Fn(&str) -> omega_core::Result<T>) -> omega_core::Result<T> {
    let path = resolve(script, reference);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn finish(report: Report, outcome: &Outcome, verified: bool) -> Report {
    match outcome {
        // Player 1 broke the rules: the script does not describe a legal play.
        Outcome::IllegalMove { reason, .. } => {
            let mut r = report;
            r.outcome = Status::Error;
            r.error = Some(format!("illegal move: {reason}"));
            r
        }
        Outcome::Completed => report.verdict(verified),
    }
}

pub fn run_word(args: &GameArgs, budget: &Budget) -> CliResult<Report> {
    let (mut adversary, alphabet, source): (Box<dyn Adversary>, Alphabet, String) = match (&args.script, args.adversary) {
        (Some(path), _) => {
            let text = read_file(path)?;
            let script = in_file(path, parse_script(&text, |r| load_ref(path, r, parse_nba)))?;
            let alphabet = script
                .moves
                .first()
                .map(|m| m.language.alphabet().clone())
                .unwrap_or_else(Alphabet::binary);
            (Box::new(script), alphabet, path.display().to_string())
        }
        (None, Some(kind)) => {
            let bin = Alphabet::binary();
            let adv: Box<dyn Adversary> = match kind {
                WordAdversary::Shrinking => Box::new(ShrinkingClopens),
                WordAdversary::Singleton => Box::new(StabilizingSingleton {
                    word: UpWord::parse(&bin, &args.word)?,
                }),
                WordAdversary::Nested => Box::new(NestedPinf),
            };
            let name = adv.name();
            (adv, bin, name)
        }
        (None, None) => return Err(Error::InvalidArgument("give --script or --adversary".into()).into()),
    };
    let mut state = GameState::new(&alphabet)
        .with_budget(budget.clone())
        .with_max_rounds(args.rounds.max(1));
    if args.no_containment_checks {
        state = state.with_check_budget(None);
    }
    let game = play(state, adversary.as_mut(), args.rounds)?;
    let report = Report::new("game play")
        .input("player1", source)
        .input("rounds", args.rounds)
        .counter("rounds_played", game.rounds_played as u64)
        .counter("warnings", game.warnings.len() as u64);
    let report = match &game.certificate {
        Some(c) => report.witness("certificate", c),
        None => report,
    };
    let (outcome, verified) = (game.outcome.clone(), game.verified);
    Ok(finish(report.result(game), &outcome, verified))
}

pub fn run_tree(args: &TreeGameArgs, budget: &Budget) -> CliResult<Report> {
    let bin = Alphabet::binary();
    let (mut adversary, source): (Box<dyn TreeAdversary>, String) = match (&args.script, args.adversary) {
        (Some(path), _) => {
            let text = read_file(path)?;
            let script = in_file(
                path,
                parse_tree_script(&text, |r| load_ref(path, r, RegularTree::parse), |r| load_ref(path, r, Bta::parse)),
            )?;
            (Box::new(script), path.display().to_string())
        }
        (None, Some(kind)) => {
            let adv: Box<dyn TreeAdversary> = match kind {
                TreeAdversaryKind::Shrinking => Box::new(TreeShrinkingClopens),
                TreeAdversaryKind::Singleton => {
                    let tree = match &args.tree {
                        Some(p) => in_file(p, RegularTree::parse(&read_file(p)?))?,
                        None => RegularTree::constant(&bin, 1)?,
                    };
                    Box::new(TreeStabilizingSingleton { tree })
                }
                TreeAdversaryKind::ExistsPath => Box::new(ExistsPathRefinements),
            };
            let name = adv.name();
            (adv, name)
        }
        (None, None) => return Err(Error::InvalidArgument("give --script or --adversary".into()).into()),
    };
    let state = TreeGameState::new(&bin)
        .with_budget(budget.clone())
        .with_max_rounds(args.rounds.max(1));
    let game = play_tree(state, adversary.as_mut(), args.rounds)?;
    let report = Report::new("tree-game play")
        .input("player1", source)
        .input("rounds", args.rounds)
        .counter("rounds_played", game.rounds_played as u64);
    let report = match &game.certificate {
        Some(c) => report.witness("certificate", c),
        None => report,
    };
    let (outcome, verified) = (game.outcome.clone(), game.verified);
    Ok(finish(report.result(game), &outcome, verified))
}

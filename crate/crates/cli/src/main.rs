//! `omega`: command-line access to ω-regular word and tree languages, the
//! separating-automaton metric and the strong Choquet game.
//!
//! Every command prints one JSON report on standard output and a short
//! human-readable line on standard error. Exit codes: 0 success or verified,
//! 1 property refuted, 2 bad input, 3 state budget exceeded.

mod aut;
mod demo;
mod game;
mod metric;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use omega_core::automata::Budget;

use report::{CliResult, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "omega", version, about = "Omega-regular languages, the Büchi metric and Choquet games")]
struct Cli {
    /// Largest automaton an intermediate construction may build.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Add the wall-clock time to the report (which makes it run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Operations on Büchi automata files.
    #[command(subcommand)]
    Aut(aut::AutCommand),
    /// The distance δ, its balls, and the non-completeness witness.
    #[command(subcommand)]
    Metric(metric::MetricCommand),
    /// The strong Choquet game on ω-words.
    #[command(subcommand)]
    Game(GameCommand),
    /// The strong Choquet game on binary trees.
    #[command(subcommand)]
    TreeGame(TreeGameCommand),
    /// Reproduce one fact end to end.
    Demo {
        #[arg(value_enum)]
        name: demo::Demo,
    },
}

#[derive(Debug, Subcommand)]
enum GameCommand {
    Play(game::GameArgs),
}

#[derive(Debug, Subcommand)]
enum TreeGameCommand {
    Play(game::TreeGameArgs),
}

/// The subcommand path, e.g. `aut member`.
fn command_path(matches: &ArgMatches) -> String {
    let mut parts = Vec::new();
    let mut current = matches;
    while let Some((name, sub)) = current.subcommand() {
        parts.push(name);
        current = sub;
    }
    parts.join(" ")
}

fn dispatch(cli: &Cli) -> CliResult<Report> {
    let budget = Budget::new(cli.max_states);
    match &cli.command {
        Command::Aut(cmd) => aut::run(cmd, &budget),
        Command::Metric(cmd) => metric::run(cmd),
        Command::Game(GameCommand::Play(args)) => game::run_word(args, &budget),
        Command::TreeGame(TreeGameCommand::Play(args)) => game::run_tree(args, &budget),
        Command::Demo { name } => demo::run(*name),
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let start = Instant::now();
    let (mut report, code) = match dispatch(&cli) {
        Ok(r) => {
            let code = r.exit_code();
            (r, code)
        }
        Err(e) => {
            let mut r = Report::new(command_path(&matches));
            r.outcome = Status::Error;
            r.error = Some(e.to_string());
            (r, e.exit_code())
        }
    };
    if cli.timing {
        report.wall_clock_us = Some(start.elapsed().as_micros() as u64);
    }
    match &report.error {
        Some(e) => eprintln!("{}: error: {e}", report.command),
        None => eprintln!("{}: {}", report.command, summary(&report)),
    }
    let json = serde_json::to_string_pretty(&report).expect("reports serialize to JSON");
    // A closed pipe downstream is not an error of the command.
    let _ = writeln!(std::io::stdout().lock(), "{json}");
    ExitCode::from(code)
}

fn summary(report: &Report) -> String {
    let status = match report.outcome {
        Status::Success => "ok",
        Status::Verified => "verified",
        Status::Refuted => "REFUTED",
        Status::Error => "error",
    };
    let fields: Vec<String> = match &report.result {
        serde_json::Value::Object(m) => m
            .iter()
            .filter(|(_, v)| match v {
                serde_json::Value::String(s) => !s.contains('\n'),
                v => !v.is_array() && !v.is_object(),
            })
            .map(|(k, v)| format!("{k}={v}"))
            .collect(),
        _ => Vec::new(),
    };
    if fields.is_empty() {
        status.to_string()
    } else {
        format!("{status} ({})", fields.join(", "))
    }
}

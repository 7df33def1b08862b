//! `omega metric …`: the separating-automaton distance on ultimately
//! periodic words.

use std::path::PathBuf;

use clap::Subcommand;
use omega_core::automata::member;
use omega_core::enumeration::raw_count;
use omega_core::metric::{ball_language, cauchy_demo, find_separator, BALL_CAP};
use omega_core::words::{Alphabet, Dyadic, UpWord};
use omega_core::Error;
use serde_json::json;

use crate::report::{write_file, CliResult, Report};

#[derive(Debug, Subcommand)]
pub enum MetricCommand {
    /// δ(x, y) = 2^-k for the least k such that a k-state automaton separates them.
    Delta {
        x: String,
        y: String,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Space-separated symbols; binary by default.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// An automaton for the ball {y : δ(x, y) < 2^-n}.
    Ball {
        x: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Checks that no automaton with at most k states separates X_n from X_m.
    Cauchy {
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Pairs `n,m`.
        #[arg(long, num_args = 1.., default_values_t = ["3,4".to_string(), "3,5".to_string(), "4,5".to_string()])]
        pairs: Vec<String>,
    },
}

fn alphabet(letters: Option<&str>) -> CliResult<Alphabet> {
    Ok(match letters {
        None => Alphabet::binary(),
        Some(s) => Alphabet::new(s.split_whitespace())?,
    })
}

fn parse_pair(text: &str) -> CliResult<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("expected a pair `n,m`, got `{text}`"));
    let (n, m) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        n.trim().parse().map_err(|_| bad())?,
        m.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn run(cmd: &MetricCommand) -> CliResult<Report> {
    match cmd {
        MetricCommand::Delta { x, y, kmax, alphabet: a } => {
            if *kmax == 0 {
                return Err(Error::InvalidArgument("--kmax must be at least 1".into()).into());
            }
            let sigma = alphabet(a.as_deref())?;
            let x = UpWord::parse(&sigma, x)?;
            let y = UpWord::parse(&sigma, y)?;
            let report = Report::new("metric delta")
                .input("pair", [x.to_string(), y.to_string()])
                .input("kmax", kmax);
            if x.equals(&y)? {
                return Ok(report.result(json!({
                    "pair": [x.to_string(), y.to_string()],
                    "checked": 0,
                    "separator_found": false,
                    "exact": true,
                    "result": Dyadic::Zero,
                })));
            }
            let mut checked = 0u64;
            let mut found = None;
            for k in 1..=*kmax {
                match find_separator(&x, &y, k)? {
                    Some(s) => {
                        found = Some((k, s.to_nba(&sigma)));
                        break;
                    }
                    None => checked += raw_count(k, sigma.len()),
                }
            }
            let (result, exact) = match &found {
                Some((k, _)) => (Dyadic::pow(*k as u32), true),
                None => (Dyadic::pow(*kmax as u32), false),
            };
            let report = report.counter("automata_without_separator", checked).result(json!({
                "pair": [x.to_string(), y.to_string()],
                "checked": checked,
                "separator_found": found.is_some(),
                "exact": exact,
                "result": result,
            }));
            Ok(match found {
                Some((_, a)) => report.witness("separator", a.to_text()),
                None => report,
            })
        }
        MetricCommand::Ball { x, n, out, alphabet: a } => {
            if *n == 0 || *n > BALL_CAP {
                return Err(Error::InvalidArgument(format!("--n must be between 1 and {BALL_CAP}")).into());
            }
            let sigma = alphabet(a.as_deref())?;
            let x = UpWord::parse(&sigma, x)?;
            let ball = ball_language(&x, *n)?;
            let report = Report::new("metric ball")
                .input("x", x.to_string())
                .input("n", n)
                .result(json!({
                    "states": ball.states(),
                    "transitions": ball.transition_count(),
                    "contains_center": member(&ball, &x)?.is_some(),
                }));
            match out {
                Some(path) => {
                    write_file(path, &ball.to_text())?;
                    Ok(report.witness("output", path.display().to_string()))
                }
                None => Ok(report.witness("automaton", ball.to_text())),
            }
        }
        MetricCommand::Cauchy { k, pairs } => {
            let pairs = pairs.iter().map(|p| parse_pair(p)).collect::<CliResult<Vec<_>>>()?;
            let report = cauchy_demo(*k, &pairs)?;
            let checked: u64 = report.pairs.iter().map(|p| p.checked).sum();
            Ok(Report::new("metric cauchy")
                .input("k", k)
                .input("pairs", &pairs)
                .counter("automata_checked", checked)
                .verdict(report.verified)
                .result(report))
        }
    }
}

//! `omega aut …`: operations on Büchi automata stored in files.

use std::path::{Path, PathBuf};

use clap::Subcommand;
use omega_core::automata::{
    buchi_decomposition, complement_with, contains_with, find_up_word, intersection_all, is_cantor_closed_with,
    member, nfa_sample, parse_nba, projection, union, Budget, Nba,
};
use omega_core::lifting::{lift, lift_witness};
use omega_core::words::UpWord;
use omega_core::Error;
use serde_json::json;

use crate::report::{in_file, read_file, write_file, CliResult, Report};

#[derive(Debug, Subcommand)]
pub enum AutCommand {
    /// Does the automaton accept an ultimately periodic word `u(v)w`?
    Member { automaton: PathBuf, word: String },
    /// Is the language empty?
    Empty { automaton: PathBuf },
    /// Union of two automata.
    Union {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Intersection of two or more automata.
    Intersect {
        #[arg(num_args = 2.., required = true)]
        automata: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Complement of the language.
    Complement {
        automaton: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Projection of an automaton over a pair alphabet.
    Project {
        automaton: PathBuf,
        #[arg(long, default_value_t = 0)]
        coordinate: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Is the language of `right` included in that of `left`?
    Contains { left: PathBuf, right: PathBuf },
    /// The pairs (U_q, V_q) with L = ⋃ U_q·V_q^ω, with sample words.
    Decompose {
        automaton: PathBuf,
        /// Longest sampled finite word.
        #[arg(long, default_value_t = 3)]
        sample_len: usize,
    },
    /// The run-annotated automaton over Σ × {0,1}; with `--word`, also an
    /// annotation of that word.
    Lift {
        automaton: PathBuf,
        #[arg(long)]
        word: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Is the language closed in the Cantor topology?
    IsClosed { automaton: PathBuf },
    /// An ultimately periodic word in the language.
    FindWord { automaton: PathBuf },
}

fn load(path: &Path) -> CliResult<Nba> {
    let text = read_file(path)?;
    in_file(path, parse_nba(&text))
}

fn emit_automaton(report: Report, a: &Nba, output: Option<&Path>) -> CliResult<Report> {
    let report = report.result(json!({ "states": a.states(), "transitions": a.transition_count() }));
    match output {
        Some(path) => {
            write_file(path, &a.to_text())?;
            Ok(report.witness("output", path.display().to_string()))
        }
        None => Ok(report.witness("automaton", a.to_text())),
    }
}

fn word_for(a: &Nba, text: &str) -> CliResult<UpWord> {
    Ok(UpWord::parse(a.alphabet(), text)?)
}

pub fn run(cmd: &AutCommand, budget: &Budget) -> CliResult<Report> {
    match cmd {
        AutCommand::Member { automaton, word } => {
            let a = load(automaton)?;
            let x = word_for(&a, word)?;
            let run = member(&a, &x)?;
            let report = Report::new("aut member")
                .input("automaton", automaton)
                .input("word", x.to_string())
                .result(json!({ "member": run.is_some() }));
            Ok(match run {
                Some(r) => report.witness("run", r),
                None => report,
            })
        }
        AutCommand::Empty { automaton } => {
            let a = load(automaton)?;
            let report = Report::new("aut empty").input("automaton", automaton);
            Ok(match find_word(&a)? {
                Some(w) => report.result(json!({ "empty": false })).witness("word", w),
                None => report.result(json!({ "empty": true })),
            })
        }
        AutCommand::Union { left, right, output } => {
            let u = union(&load(left)?, &load(right)?)?;
            let report = Report::new("aut union").input("left", left).input("right", right);
            emit_automaton(report, &u, output.as_deref())
        }
        AutCommand::Intersect { automata, output } => {
            let parts = automata.iter().map(|p| load(p)).collect::<CliResult<Vec<_>>>()?;
            let refs: Vec<&Nba> = parts.iter().collect();
            let i = intersection_all(&refs, budget)?;
            let report = Report::new("aut intersect").input("automata", automata);
            emit_automaton(report, &i, output.as_deref())
        }
        AutCommand::Complement { automaton, output } => {
            let c = complement_with(&load(automaton)?, budget)?;
            let report = Report::new("aut complement").input("automaton", automaton);
            emit_automaton(report, &c, output.as_deref())
        }
        AutCommand::Project {
            automaton,
            coordinate,
            output,
        } => {
            let p = projection(&load(automaton)?, *coordinate)?;
            let report = Report::new("aut project")
                .input("automaton", automaton)
                .input("coordinate", coordinate);
            emit_automaton(report, &p, output.as_deref())
        }
        AutCommand::Contains { left, right } => {
            let a = load(left)?;
            let b = load(right)?;
            let holds = contains_with(&a, &b, budget)?;
            let report = Report::new("aut contains")
                .input("left", left)
                .input("right", right)
                .result(json!({ "contains": holds }));
            if holds {
                return Ok(report);
            }
            // A word of the right language outside the left one.
            let outside = intersection_all(&[&b, &complement_with(&a, budget)?], budget)?;
            Ok(match find_word(&outside)? {
                Some(w) => report.witness("counterexample", w),
                None => report,
            })
        }
        AutCommand::Decompose { automaton, sample_len } => {
            let a = load(automaton)?;
            let pairs: Vec<_> = buchi_decomposition(&a)
                .into_iter()
                .map(|p| {
                    let words = |n| nfa_sample(n, *sample_len).iter().map(|w| w.to_string()).collect::<Vec<_>>();
                    json!({
                        "state": p.state,
                        "prefixes": words(&p.prefixes),
                        "periods": words(&p.periods),
                    })
                })
                .collect();
            Ok(Report::new("aut decompose")
                .input("automaton", automaton)
                .input("sample_len", sample_len)
                .counter("pairs", pairs.len() as u64)
                .result(json!({ "pairs": pairs })))
        }
        AutCommand::Lift {
            automaton,
            word,
            output,
        } => {
            let a = load(automaton)?;
            let l = lift(&a);
            let mut report = Report::new("aut lift").input("automaton", automaton);
            if let Some(text) = word {
                let x = word_for(&a, text)?;
                report = report.input("word", x.to_string());
                match lift_witness(&l, &x) {
                    Ok(alpha) => {
                        report = report
                            .witness("annotation", &alpha)
                            .witness("annotation_in_pinf", alpha.is_in_pinf()?)
                    }
                    Err(Error::NotAccepted(_)) => report = report.witness("annotation", ()),
                    Err(e) => return Err(e.into()),
                }
            }
            emit_automaton(report, &l.lifted, output.as_deref())
        }
        AutCommand::IsClosed { automaton } => {
            let closed = is_cantor_closed_with(&load(automaton)?, budget)?;
            Ok(Report::new("aut is-closed")
                .input("automaton", automaton)
                .result(json!({ "closed": closed })))
        }
        AutCommand::FindWord { automaton } => {
            let word = find_word(&load(automaton)?)?;
            Ok(Report::new("aut find-word")
                .input("automaton", automaton)
                .result(json!({ "empty": word.is_none(), "word": word })))
        }
    }
}

fn find_word(a: &Nba) -> CliResult<Option<UpWord>> {
    match find_up_word(a) {
        Ok(w) => Ok(Some(w)),
        Err(Error::EmptyLanguage) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

//! Line-based text format for word automata.
//!
//! ```text
//! nba                      # or: nfa
//! alphabet 0 1
//! states 2
//! initial 0
//! final 1
//! trans 0 0 0
//! trans 0 1 1
//! ```

use std::fmt::Write;

use super::{Nba, Nfa, TransitionSystem};
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// Either kind of word automaton, as read from text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedAutomaton {
    Nba(Nba),
    Nfa(Nfa),
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn tokenized_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn parse_index(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, got `{token}`")))
}

pub(crate) fn check_state(line: usize, q: usize, states: usize) -> Result<usize> {
    if q < states {
        Ok(q)
    } else {
        Err(Error::parse(
            line,
            format!("state {q} out of range for {states} states"),
        ))
    }
}

pub(crate) fn parse_symbol(line: usize, alphabet: &Alphabet, token: &str) -> Result<usize> {
    alphabet
        .index_of(token)
        .ok_or_else(|| Error::parse(line, format!("unknown symbol `{token}`")))
}

/// Reads the shared `alphabet`/`states` header, returning the remaining lines.
pub(crate) struct Header<'a> {
    pub kind: &'a str,
    pub alphabet: Alphabet,
    pub states: usize,
    pub rest: Vec<(usize, Vec<&'a str>)>,
}

/// Without an `alphabet` line, `default_alphabet` is used if given.
pub(crate) fn parse_header<'a>(
    text: &'a str,
    kinds: &[&str],
    default_alphabet: Option<Alphabet>,
) -> Result<Header<'a>> {
    let mut lines = tokenized_lines(text);
    let (line, tokens) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let kind = tokens[0];
    if tokens.len() != 1 || !kinds.contains(&kind) {
        return Err(Error::parse(
            line,
            format!("expected one of {kinds:?}, got `{}`", tokens.join(" ")),
        ));
    }
    let mut alphabet = None;
    let mut states = None;
    let mut rest = Vec::new();
    for (line, tokens) in lines {
        match tokens[0] {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line, "duplicate alphabet"));
                }
                alphabet = Some(
                    Alphabet::new(tokens[1..].iter().copied())
                        .map_err(|e| Error::parse(line, e.to_string()))?,
                );
            }
            "states" => {
                if tokens.len() != 2 || states.is_some() {
                    return Err(Error::parse(line, "expected `states <n>` once"));
                }
                let n = parse_index(line, tokens[1], "a state count")?;
                if n == 0 {
                    return Err(Error::parse(line, "at least one state is required"));
                }
                states = Some(n);
            }
            _ => rest.push((line, tokens)),
        }
    }
    Ok(Header {
        kind,
        alphabet: alphabet
            .or(default_alphabet)
            .ok_or_else(|| Error::parse(line, "missing `alphabet` line"))?,
        states: states.ok_or_else(|| Error::parse(line, "missing `states` line"))?,
        rest,
    })
}

pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton> {
    let header = parse_header(text, &["nba", "nfa"], None)?;
    let mut ts = TransitionSystem::new(&header.alphabet, header.states)?;
    for (line, tokens) in &header.rest {
        let line = *line;
        match tokens[0] {
            "initial" => {
                for t in &tokens[1..] {
                    let q = check_state(line, parse_index(line, t, "a state")?, ts.states())?;
                    ts.add_initial(q)?;
                }
            }
            "final" => {
                for t in &tokens[1..] {
                    let q = check_state(line, parse_index(line, t, "a state")?, ts.states())?;
                    ts.set_accepting(q, true)?;
                }
            }
            "trans" => {
                if tokens.len() != 4 {
                    return Err(Error::parse(line, "expected `trans <from> <symbol> <to>`"));
                }
                let p = check_state(line, parse_index(line, tokens[1], "a state")?, ts.states())?;
                let a = parse_symbol(line, &header.alphabet, tokens[2])?;
                let q = check_state(line, parse_index(line, tokens[3], "a state")?, ts.states())?;
                ts.add_transition(p, a, q)?;
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(match header.kind {
        "nba" => ParsedAutomaton::Nba(Nba(ts)),
        _ => ParsedAutomaton::Nfa(Nfa(ts)),
    })
}

pub fn parse_nba(text: &str) -> Result<Nba> {
    match parse_automaton(text)? {
        ParsedAutomaton::Nba(a) => Ok(a),
        ParsedAutomaton::Nfa(_) => Err(Error::parse(1, "expected an nba, found an nfa")),
    }
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    match parse_automaton(text)? {
        ParsedAutomaton::Nfa(a) => Ok(a),
        ParsedAutomaton::Nba(_) => Err(Error::parse(1, "expected an nfa, found an nba")),
    }
}

fn write_system(out: &mut String, kind: &str, ts: &TransitionSystem) {
    let alphabet = ts.alphabet();
    let _ = writeln!(out, "{kind}");
    let _ = writeln!(out, "alphabet {}", alphabet.symbols().join(" "));
    let _ = writeln!(out, "states {}", ts.states());
    let join = |it: &mut dyn Iterator<Item = usize>| {
        it.map(|q| format!(" {q}")).collect::<String>()
    };
    let _ = writeln!(out, "initial{}", join(&mut ts.initial().iter().copied()));
    let _ = writeln!(out, "final{}", join(&mut ts.accepting_states()));
    for (p, a, q) in ts.transitions() {
        let _ = writeln!(out, "trans {p} {} {q}", alphabet.symbol(a));
    }
}

/// Writes an automaton in the text format.
pub fn serialize(automaton: &ParsedAutomaton) -> String {
    let mut out = String::new();
    match automaton {
        ParsedAutomaton::Nba(a) => write_system(&mut out, "nba", a),
        ParsedAutomaton::Nfa(a) => write_system(&mut out, "nfa", a),
    }
    out
}

impl Nba {
    pub fn to_text(&self) -> String {
        serialize(&ParsedAutomaton::Nba(self.clone()))
    }
}

impl Nfa {
    pub fn to_text(&self) -> String {
        serialize(&ParsedAutomaton::Nfa(self.clone()))
    }
}

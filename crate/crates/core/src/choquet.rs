//! The strong Choquet game on `Σ^ℕ` with the Büchi topology, and Player 2's
//! winning strategy.
//!
//! Player 1 plays a point `σ_i` and a basic open set `L_i` (an automaton)
//! containing it, inside the previous answer `V_{i-1}`. Player 2 lifts each
//! `L_n` to the closed set `C_n` of annotated pairs and answers
//!
//! `V_i = ⋂_{n ≤ i} π_0[C_n ∩ (N_{w_{i-n}} × N_{s^n_{i-n}})]`
//!
//! where `w_l` is the prefix of length `l + 1` of the current point and
//! `s^n_l` is a prefix of an annotation of `σ_i` with at least `l + 1` ones.
//! Any point in all `V_i` then has, for each `n`, annotations converging to
//! a sequence with infinitely many ones, so it lies in every `L_n`.

use serde::Serialize;

use crate::automata::{
    clopen_nba, contains_with, find_up_word, intersection, intersection_all, member, pinf_nba, product,
    projection, reduce, singleton_nba, Budget, Nba,
};
use crate::error::{Error, Result};
use crate::lifting::{lift, lift_witness_within, LiftedNba};
use crate::words::{Alphabet, FiniteWord, UpWord};

/// Default number of rounds a game may last.
pub const DEFAULT_MAX_ROUNDS: usize = 10;

/// Default state budget for the containment checks on Player 1's moves.
pub const DEFAULT_CHECK_BUDGET: usize = 20_000;

/// A move of Player 1: a point and a basic open set containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move1 {
    pub sigma: UpWord,
    pub language: Nba,
}

/// Outcome of a containment check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Verified,
    Refuted,
    /// The check ran out of budget.
    Unknown,
    /// Checks were disabled.
    Skipped,
}

impl Check {
    fn of(result: Result<bool>) -> Result<Check> {
        match result {
            Ok(true) => Ok(Check::Verified),
            Ok(false) => Ok(Check::Refuted),
            Err(e) if e.is_budget() => Ok(Check::Unknown),
            Err(e) => Err(e),
        }
    }
}

/// What happened in one round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub sigma: UpWord,
    pub language_states: usize,
    /// `σ_i ∈ V_{i-1}`; absent in round 0.
    pub sigma_in_previous: Option<bool>,
    /// `L_i ⊆ V_{i-1}`; absent in round 0.
    pub language_within_previous: Option<Check>,
    /// The annotation of `σ_i` drawn for the new lift `C_i`.
    pub witness: UpWord,
    pub w: FiniteWord,
    /// `annotations[n]` lists `s^n_0, s^n_1, …` after this round.
    pub annotations: Vec<Vec<FiniteWord>>,
    pub response_states: usize,
    pub sigma_in_response: bool,
    /// `V_i ⊆ L_i`.
    pub response_within_language: Check,
}

struct Played {
    language: Nba,
    lift: LiftedNba,
    annotations: Vec<FiniteWord>,
}

struct Pending {
    mv: Move1,
    sigma_in_previous: Option<bool>,
    language_within_previous: Option<Check>,
}

/// Bookkeeping of a game in progress. Moves alternate: [`GameState::p1_move`]
/// then [`GameState::p2_respond`].
pub struct GameState {
    alphabet: Alphabet,
    played: Vec<Played>,
    w: Vec<FiniteWord>,
    response: Option<Nba>,
    pending: Option<Pending>,
    log: Vec<RoundRecord>,
    check_budget: Option<Budget>,
    budget: Budget,
    max_rounds: usize,
}

impl GameState {
    pub fn new(alphabet: &Alphabet) -> Self {
        GameState {
            alphabet: alphabet.clone(),
            played: Vec::new(),
            w: Vec::new(),
            response: None,
            pending: None,
            log: Vec::new(),
            check_budget: Some(Budget::new(DEFAULT_CHECK_BUDGET)),
            budget: Budget::default(),
            max_rounds: DEFAULT_MAX_ROUNDS,
        }
    }

    /// Budget for containment checks, or `None` to skip them.
    pub fn with_check_budget(mut self, budget: Option<Budget>) -> Self {
        self.check_budget = budget;
        self
    }

    /// Budget for building Player 2's answers.
    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Self {
        self.max_rounds = rounds;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of completed rounds.
    pub fn round(&self) -> usize {
        self.log.len()
    }

    /// Player 2's latest answer.
    pub fn response(&self) -> Option<&Nba> {
        self.response.as_ref()
    }

    pub fn records(&self) -> &[RoundRecord] {
        &self.log
    }

    /// The prefixes `w_0, w_1, …`.
    pub fn prefixes(&self) -> &[FiniteWord] {
        &self.w
    }

    /// The annotation prefixes `s^n_0, s^n_1, …` for round `n`.
    pub fn annotations(&self, n: usize) -> Option<&[FiniteWord]> {
        self.played.get(n).map(|p| &p.annotations[..])
    }

    /// The languages played so far.
    pub fn languages(&self) -> impl Iterator<Item = &Nba> {
        self.played.iter().map(|p| &p.language)
    }

    /// Validates and records a move of Player 1. Membership violations are
    /// illegal; so is a containment `L_i ⊆ V_{i-1}` that is shown false. A
    /// containment that cannot be decided within budget is recorded only.
    pub fn p1_move(&mut self, mv: Move1) -> Result<()> {
        if self.pending.is_some() {
            return Err(Error::InvalidArgument("Player 2 has not answered the previous move".into()));
        }
        if self.log.len() >= self.max_rounds {
            return Err(Error::InvalidArgument(format!("the game is limited to {} rounds", self.max_rounds)));
        }
        self.alphabet.ensure_same(mv.sigma.alphabet())?;
        self.alphabet.ensure_same(mv.language.alphabet())?;
        if member(&mv.language, &mv.sigma)?.is_none() {
            return Err(Error::IllegalMove(format!("{} is not in the played set", mv.sigma)));
        }
        let (sigma_in_previous, language_within_previous) = match &self.response {
            None => (None, None),
            Some(v) => {
                if member(v, &mv.sigma)?.is_none() {
                    return Err(Error::IllegalMove(format!(
                        "{} is not in Player 2's previous answer",
                        mv.sigma
                    )));
                }
                let check = match &self.check_budget {
                    None => Check::Skipped,
                    Some(b) => Check::of(contains_with(v, &mv.language, b))?,
                };
                if check == Check::Refuted {
                    return Err(Error::IllegalMove(
                        "the played set is not inside Player 2's previous answer".into(),
                    ));
                }
                (Some(true), Some(check))
            }
        };
        self.pending = Some(Pending {
            mv,
            sigma_in_previous,
            language_within_previous,
        });
        Ok(())
    }

    /// Player 2's answer to the pending move.
    pub fn p2_respond(&mut self) -> Result<Nba> {
        let pending = self
            .pending
            .take()
            .ok_or_else(|| Error::InvalidArgument("no move of Player 1 to answer".into()))?;
        let i = self.log.len();
        let sigma = &pending.mv.sigma;

        // Refresh the annotations of earlier rounds, inside the previous constraints.
        for n in 0..i {
            let l = i - 1 - n;
            let region = self.region(&self.w[l], &self.played[n].annotations[l])?;
            let alpha = lift_witness_within(&self.played[n].lift, sigma, Some(&region))
                .map_err(|e| invariant(e, n, i))?;
            let previous = &self.played[n].annotations[l];
            let next = extend_prefix(&alpha, previous.len() + 1, l + 2);
            self.played[n].annotations.push(next);
        }

        let lifted = lift(&pending.mv.language);
        let witness = lift_witness_within(&lifted, sigma, None).map_err(|e| invariant(e, i, i))?;
        self.played.push(Played {
            language: pending.mv.language.clone(),
            lift: lifted,
            annotations: vec![extend_prefix(&witness, 0, 1)],
        });
        self.w.push(sigma.truncate(i + 1));

        let mut answer: Option<Nba> = None;
        for n in 0..=i {
            let l = i - n;
            let region = self.region(&self.w[l], &self.played[n].annotations[l])?;
            let pairs = intersection_all(&[&self.played[n].lift.lifted, &region], &self.budget)?;
            let term = reduce(&projection(&pairs, 0)?);
            answer = Some(match answer {
                None => term,
                Some(v) => reduce(&intersection_all(&[&v, &term], &self.budget)?),
            });
        }
        let v = answer.expect("at least one term");
        let sigma_in_response = member(&v, sigma)?.is_some();
        if !sigma_in_response {
            return Err(Error::Invariant(format!("round {i}: the answer misses the played point")));
        }
        let response_within_language = match &self.check_budget {
            None => Check::Skipped,
            Some(b) => Check::of(contains_with(&pending.mv.language, &v, b))?,
        };
        self.log.push(RoundRecord {
            round: i,
            sigma: sigma.clone(),
            language_states: pending.mv.language.states(),
            sigma_in_previous: pending.sigma_in_previous,
            language_within_previous: pending.language_within_previous,
            witness,
            w: self.w[i].clone(),
            annotations: self.played.iter().map(|p| p.annotations.clone()).collect(),
            response_states: v.states(),
            sigma_in_response,
            response_within_language,
        });
        self.response = Some(v.clone());
        Ok(v)
    }

    /// `N_w × N_s` over the lifted alphabet.
    fn region(&self, w: &FiniteWord, s: &FiniteWord) -> Result<Nba> {
        product(&clopen_nba(w), &clopen_nba(s))
    }

    /// `w_0 ⊆ w_1 ⊆ …` with `|w_l| = l + 1`.
    pub fn prefix_coherence(&self) -> bool {
        self.w.iter().enumerate().all(|(l, w)| w.len() == l + 1)
            && self.w.windows(2).all(|p| p[0].is_prefix_of(&p[1]))
    }

    /// Each `s^n_l` strictly extends `s^n_{l-1}` and carries at least `l + 1` ones.
    pub fn annotation_growth(&self) -> bool {
        self.played.iter().all(|p| {
            p.annotations.iter().enumerate().all(|(l, s)| s.count(1) > l)
                && p.annotations
                    .windows(2)
                    .all(|q| q[0].is_prefix_of(&q[1]) && q[0].len() < q[1].len())
        })
    }
}

fn invariant(e: Error, n: usize, i: usize) -> Error {
    match e {
        Error::NotAccepted(x) => Error::Invariant(format!(
            "round {i}: no annotation of {x} for the set played in round {n}"
        )),
        e => e,
    }
}

/// The shortest prefix of `alpha` with at least `min_len` letters and at
/// least `ones` ones. `alpha` must have infinitely many ones.
fn extend_prefix(alpha: &UpWord, min_len: usize, ones: usize) -> FiniteWord {
    let mut len = min_len;
    loop {
        let p = alpha.truncate(len);
        if p.count(1) >= ones {
            return p;
        }
        len += 1;
    }
}

/// Supplies Player 1's moves.
pub trait Adversary {
    fn name(&self) -> String;
    /// The move for `round`, given Player 2's previous answer.
    fn next_move(&mut self, round: usize, previous: Option<&Nba>) -> Result<Move1>;
}

/// Plays `0^ω` inside `N_{0^{i+1}}` in round `i`.
pub struct ShrinkingClopens;

impl Adversary for ShrinkingClopens {
    fn name(&self) -> String {
        "shrinking-clopens".into()
    }

    fn next_move(&mut self, round: usize, _: Option<&Nba>) -> Result<Move1> {
        let bin = Alphabet::binary();
        Ok(Move1 {
            sigma: UpWord::new(&bin, vec![], vec![0])?,
            language: clopen_nba(&FiniteWord::new(&bin, vec![0; round + 1])?),
        })
    }
}

/// Plays the same singleton every round.
pub struct StabilizingSingleton {
    pub word: UpWord,
}

impl Adversary for StabilizingSingleton {
    fn name(&self) -> String {
        format!("stabilizing-singleton {}", self.word)
    }

    fn next_move(&mut self, _: usize, _: Option<&Nba>) -> Result<Move1> {
        Ok(Move1 {
            sigma: self.word.clone(),
            language: singleton_nba(&self.word),
        })
    }
}

/// Plays `(01)^ω` inside `ℙ_∞ ∩ N_{(01)^i}` in round `i`.
pub struct NestedPinf;

impl Adversary for NestedPinf {
    fn name(&self) -> String {
        "nested-pinf".into()
    }

    fn next_move(&mut self, round: usize, _: Option<&Nba>) -> Result<Move1> {
        let bin = Alphabet::binary();
        let prefix: Vec<usize> = (0..round).flat_map(|_| [0, 1]).collect();
        Ok(Move1 {
            sigma: UpWord::new(&bin, vec![], vec![0, 1])?,
            language: intersection(&pinf_nba(), &clopen_nba(&FiniteWord::new(&bin, prefix)?))?,
        })
    }
}

/// A fixed list of moves.
pub struct Scripted {
    pub moves: Vec<Move1>,
}

impl Adversary for Scripted {
    fn name(&self) -> String {
        "script".into()
    }

    fn next_move(&mut self, round: usize, _: Option<&Nba>) -> Result<Move1> {
        self.moves
            .get(round)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("the script has no move for round {round}")))
    }
}

/// Parses lines `round <i>: sigma=<word> L=<file>`, with rounds numbered
/// from 0. `load` resolves the automaton reference; the word is read over
/// that automaton's alphabet.
pub fn parse_script(text: &str, mut load: impl FnMut(&str) -> Result<Nba>) -> Result<Scripted> {
    let mut moves = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, "expected `round <i>: ...`"))?;
        let round: usize = head
            .trim()
            .strip_prefix("round")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::parse(line_no, "expected `round <i>`"))?;
        if round != moves.len() {
            return Err(Error::parse(line_no, format!("expected round {}, found {round}", moves.len())));
        }
        let mut sigma = None;
        let mut language = None;
        for field in rest.split_whitespace() {
            match field.split_once('=') {
                Some(("sigma", v)) => sigma = Some(v),
                Some(("L", v)) => language = Some(v),
                _ => return Err(Error::parse(line_no, format!("unexpected field `{field}`"))),
            }
        }
        let (Some(sigma), Some(language)) = (sigma, language) else {
            return Err(Error::parse(line_no, "both sigma= and L= are required"));
        };
        let language = load(language)?;
        let sigma = UpWord::parse(language.alphabet(), sigma)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        moves.push(Move1 { sigma, language });
    }
    Ok(Scripted { moves })
}

/// How a game ended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Completed,
    /// Player 1 broke the rules and loses.
    IllegalMove { round: usize, reason: String },
}

/// Summary of a finished game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameReport {
    pub adversary: String,
    pub rounds_played: usize,
    pub outcome: Outcome,
    pub records: Vec<RoundRecord>,
    pub prefix_coherence: bool,
    pub annotation_growth: bool,
    /// A point of the last answer.
    pub certificate: Option<UpWord>,
    /// Membership of the certificate in each played set.
    pub certificate_in_languages: Vec<bool>,
    pub warnings: Vec<String>,
    /// Every check passed and the certificate lies in every played set.
    pub verified: bool,
}

/// Plays `rounds` rounds against `adversary` with default budgets.
pub fn play_scripted(adversary: &mut dyn Adversary, alphabet: &Alphabet, rounds: usize) -> Result<GameReport> {
    play(GameState::new(alphabet), adversary, rounds)
}

/// Plays `rounds` rounds from a fresh `state`.
pub fn play(mut state: GameState, adversary: &mut dyn Adversary, rounds: usize) -> Result<GameReport> {
    let mut outcome = Outcome::Completed;
    for round in 0..rounds {
        let mv = adversary.next_move(round, state.response())?;
        match state.p1_move(mv) {
            Ok(()) => {}
            Err(Error::IllegalMove(reason)) => {
                outcome = Outcome::IllegalMove { round, reason };
                break;
            }
            Err(e) => return Err(e),
        }
        state.p2_respond()?;
    }
    let certificate = match state.response() {
        Some(v) => Some(find_up_word(v)?),
        None => None,
    };
    let certificate_in_languages = match &certificate {
        Some(c) => state
            .languages()
            .map(|l| member(l, c).map(|w| w.is_some()))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let mut warnings = Vec::new();
    for r in state.records() {
        if r.language_within_previous == Some(Check::Unknown) {
            warnings.push(format!("round {}: containment in the previous answer not decided", r.round));
        }
        if r.response_within_language == Check::Unknown {
            warnings.push(format!("round {}: containment of the answer not decided", r.round));
        }
    }
    let checks_pass = state.records().iter().all(|r| {
        r.sigma_in_response
            && r.sigma_in_previous != Some(false)
            && r.response_within_language != Check::Refuted
            && r.language_within_previous != Some(Check::Refuted)
    });
    let verified = outcome == Outcome::Completed
        && checks_pass
        && state.prefix_coherence()
        && state.annotation_growth()
        && certificate.is_some()
        && certificate_in_languages.iter().all(|&b| b);
    Ok(GameReport {
        adversary: adversary.name(),
        rounds_played: state.round(),
        outcome,
        records: state.records().to_vec(),
        prefix_coherence: state.prefix_coherence(),
        annotation_growth: state.annotation_growth(),
        certificate,
        certificate_in_languages,
        warnings,
        verified,
    })
}

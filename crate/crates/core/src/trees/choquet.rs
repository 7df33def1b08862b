//! The strong Choquet game on infinite binary trees.
//!
//! Mirrors the word game: Player 1 plays a regular tree `t_i` inside a
//! Büchi tree language `L_i`, and Player 2 answers
//!
//! `V_i = ⋂_{n ≤ i} π_0[C_n ∩ (N_{w_{i-n}} × N_{s^n_{i-n}})]`
//!
//! with `C_n` the lifted automaton of `L_n`, `w_l = t_i | (l + 1)` and
//! `s^n_l` an initial subtree of an annotation of `t_i` all of whose paths
//! carry at least `l + 1` ones. Containment of Player 1's sets in the
//! previous answer is not checked: only memberships are validated.

use serde::Serialize;

use super::{
    bta_intersection_all, bta_member, bta_product_with, bta_projection, bta_trim, bta_witness, clopen_bta,
    exists_path, min_depth_for_level, o_level_check, singleton_bta, tree_lift, tree_prefix, tree_witness,
    universal_bta, Bta, FiniteTreePrefix, RegularTree,
};
use crate::automata::{pinf_nba, Budget};
use crate::choquet::Outcome;
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// A move of Player 1 in the tree game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMove {
    pub tree: RegularTree,
    pub language: Bta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeRoundRecord {
    pub round: usize,
    pub tree: RegularTree,
    pub language_states: usize,
    /// `t_i ∈ V_{i-1}`; absent in round 0.
    pub tree_in_previous: Option<bool>,
    /// Annotation of `t_i` drawn for the new lift.
    pub witness: RegularTree,
    pub w: FiniteTreePrefix,
    /// `annotations[n]` lists `s^n_0, s^n_1, …` after this round.
    pub annotations: Vec<Vec<FiniteTreePrefix>>,
    pub response_states: usize,
    pub tree_in_response: bool,
}

struct Played {
    language: Bta,
    lifted: Bta,
    annotations: Vec<FiniteTreePrefix>,
}

pub struct TreeGameState {
    alphabet: Alphabet,
    played: Vec<Played>,
    w: Vec<FiniteTreePrefix>,
    response: Option<Bta>,
    pending: Option<(TreeMove, Option<bool>)>,
    log: Vec<TreeRoundRecord>,
    budget: Budget,
    max_rounds: usize,
}

impl TreeGameState {
    pub fn new(alphabet: &Alphabet) -> Self {
        TreeGameState {
            alphabet: alphabet.clone(),
            played: Vec::new(),
            w: Vec::new(),
            response: None,
            pending: None,
            log: Vec::new(),
            budget: Budget::default(),
            max_rounds: crate::choquet::DEFAULT_MAX_ROUNDS,
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Self {
        self.max_rounds = rounds;
        self
    }

    pub fn round(&self) -> usize {
        self.log.len()
    }

    pub fn response(&self) -> Option<&Bta> {
        self.response.as_ref()
    }

    pub fn records(&self) -> &[TreeRoundRecord] {
        &self.log
    }

    pub fn prefixes(&self) -> &[FiniteTreePrefix] {
        &self.w
    }

    pub fn annotations(&self, n: usize) -> Option<&[FiniteTreePrefix]> {
        self.played.get(n).map(|p| &p.annotations[..])
    }

    pub fn languages(&self) -> impl Iterator<Item = &Bta> {
        self.played.iter().map(|p| &p.language)
    }

    /// Validates the memberships `t_i ∈ L_i` and `t_i ∈ V_{i-1}`.
    pub fn p1_move(&mut self, mv: TreeMove) -> Result<()> {
        if self.pending.is_some() {
            return Err(Error::InvalidArgument("Player 2 has not answered the previous move".into()));
        }
        if self.log.len() >= self.max_rounds {
            return Err(Error::InvalidArgument(format!("the game is limited to {} rounds", self.max_rounds)));
        }
        self.alphabet.ensure_same(mv.tree.alphabet())?;
        self.alphabet.ensure_same(mv.language.alphabet())?;
        if bta_member(&mv.language, &mv.tree)?.is_none() {
            return Err(Error::IllegalMove("the tree is not in the played set".into()));
        }
        let in_previous = match &self.response {
            None => None,
            Some(v) => {
                if bta_member(v, &mv.tree)?.is_none() {
                    return Err(Error::IllegalMove("the tree is not in Player 2's previous answer".into()));
                }
                Some(true)
            }
        };
        self.pending = Some((mv, in_previous));
        Ok(())
    }

    pub fn p2_respond(&mut self) -> Result<Bta> {
        let (mv, tree_in_previous) = self
            .pending
            .take()
            .ok_or_else(|| Error::InvalidArgument("no move of Player 1 to answer".into()))?;
        let i = self.log.len();
        let t = &mv.tree;

        for n in 0..i {
            let l = i - 1 - n;
            let region = self.region(&self.w[l], &self.played[n].annotations[l])?;
            let alpha = annotation_within(&self.played[n].lifted, t, &region, &self.budget)?.ok_or_else(|| {
                Error::Invariant(format!("round {i}: no annotation for the set played in round {n}"))
            })?;
            let previous = &self.played[n].annotations[l];
            let depth = min_depth_for_level(&alpha, l + 2)?.max(previous.depth() + 1);
            self.played[n].annotations.push(tree_prefix(&alpha, depth));
        }

        let witness = tree_witness(&mv.language, t)?;
        let depth = min_depth_for_level(&witness, 1)?;
        self.played.push(Played {
            language: mv.language.clone(),
            lifted: tree_lift(&mv.language),
            annotations: vec![tree_prefix(&witness, depth)],
        });
        self.w.push(tree_prefix(t, i + 1));

        let mut answer: Option<Bta> = None;
        for n in 0..=i {
            let l = i - n;
            let region = self.region(&self.w[l], &self.played[n].annotations[l])?;
            let pairs = bta_intersection_all(&[&self.played[n].lifted, &region], &self.budget)?;
            let term = bta_trim(&bta_projection(&pairs, 0)?);
            answer = Some(match answer {
                None => term,
                Some(v) => bta_intersection_all(&[&v, &term], &self.budget)?,
            });
        }
        let v = answer.expect("at least one term");
        let tree_in_response = bta_member(&v, t)?.is_some();
        if !tree_in_response {
            return Err(Error::Invariant(format!("round {i}: the answer misses the played tree")));
        }
        self.log.push(TreeRoundRecord {
            round: i,
            tree: t.clone(),
            language_states: mv.language.states(),
            tree_in_previous,
            witness,
            w: self.w[i].clone(),
            annotations: self.played.iter().map(|p| p.annotations.clone()).collect(),
            response_states: v.states(),
            tree_in_response,
        });
        self.response = Some(v.clone());
        Ok(v)
    }

    fn region(&self, w: &FiniteTreePrefix, s: &FiniteTreePrefix) -> Result<Bta> {
        bta_product_with(&clopen_bta(w), &clopen_bta(s), &self.budget)
    }

    /// `w_l` has depth `l + 1` and each extends the previous one.
    pub fn prefix_coherence(&self) -> bool {
        self.w.iter().enumerate().all(|(l, w)| w.depth() == l + 1)
            && self.w.windows(2).all(|p| p[0].is_prefix_of(&p[1]))
    }

    /// Each `s^n_l` strictly extends `s^n_{l-1}` and every path through it
    /// carries at least `l + 1` ones, so `N_{s^n_l} ⊆ O_{l+1}`.
    pub fn annotation_levels(&self) -> bool {
        self.played.iter().all(|p| {
            p.annotations
                .iter()
                .enumerate()
                .all(|(l, s)| o_level_check(s, l + 1).unwrap_or(false))
                && p.annotations
                    .windows(2)
                    .all(|q| q[0].is_prefix_of(&q[1]) && q[0].depth() < q[1].depth())
        })
    }
}

/// An annotation `α` with `(t, α)` accepted by `lifted` and `region`.
fn annotation_within(lifted: &Bta, t: &RegularTree, region: &Bta, budget: &Budget) -> Result<Option<RegularTree>> {
    let column = bta_product_with(&singleton_bta(t), &universal_bta(&Alphabet::binary()), budget)?;
    let pairs = bta_intersection_all(&[&column, lifted, region], budget)?;
    bta_witness(&pairs).map(|p| p.coordinate(1)).transpose()
}

/// Supplies Player 1's moves in the tree game.
pub trait TreeAdversary {
    fn name(&self) -> String;
    fn next_move(&mut self, round: usize, previous: Option<&Bta>) -> Result<TreeMove>;
}

/// Plays the all-ones tree inside `N_{t|i}` in round `i`.
pub struct TreeShrinkingClopens;

impl TreeAdversary for TreeShrinkingClopens {
    fn name(&self) -> String {
        "tree-shrinking-clopens".into()
    }

    fn next_move(&mut self, round: usize, _: Option<&Bta>) -> Result<TreeMove> {
        let t = RegularTree::constant(&Alphabet::binary(), 1)?;
        Ok(TreeMove {
            language: clopen_bta(&tree_prefix(&t, round)),
            tree: t,
        })
    }
}

/// Plays the same singleton every round.
pub struct TreeStabilizingSingleton {
    pub tree: RegularTree,
}

impl TreeAdversary for TreeStabilizingSingleton {
    fn name(&self) -> String {
        "tree-stabilizing-singleton".into()
    }

    fn next_move(&mut self, _: usize, _: Option<&Bta>) -> Result<TreeMove> {
        Ok(TreeMove {
            tree: self.tree.clone(),
            language: singleton_bta(&self.tree),
        })
    }
}

/// Plays the all-ones tree inside "some path has infinitely many ones",
/// refined by the prefix of depth `i` in round `i`.
pub struct ExistsPathRefinements;

impl TreeAdversary for ExistsPathRefinements {
    fn name(&self) -> String {
        "exists-path-refinements".into()
    }

    fn next_move(&mut self, round: usize, _: Option<&Bta>) -> Result<TreeMove> {
        let t = RegularTree::constant(&Alphabet::binary(), 1)?;
        let language = bta_trim(&bta_intersection_all(
            &[&exists_path(&pinf_nba()), &clopen_bta(&tree_prefix(&t, round))],
            &Budget::default(),
        )?);
        Ok(TreeMove { tree: t, language })
    }
}

/// A fixed list of moves.
pub struct TreeScripted {
    pub moves: Vec<TreeMove>,
}

impl TreeAdversary for TreeScripted {
    fn name(&self) -> String {
        "script".into()
    }

    fn next_move(&mut self, round: usize, _: Option<&Bta>) -> Result<TreeMove> {
        self.moves
            .get(round)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("the script has no move for round {round}")))
    }
}

/// Parses lines `round <i>: tree=<file> L=<file>`; `load_tree` and
/// `load_bta` resolve the references.
pub fn parse_tree_script(
    text: &str,
    mut load_tree: impl FnMut(&str) -> Result<RegularTree>,
    mut load_bta: impl FnMut(&str) -> Result<Bta>,
) -> Result<TreeScripted> {
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
        let mut tree = None;
        let mut language = None;
        for field in rest.split_whitespace() {
            match field.split_once('=') {
                Some(("tree", v)) => tree = Some(load_tree(v)?),
                Some(("L", v)) => language = Some(load_bta(v)?),
                _ => return Err(Error::parse(line_no, format!("unexpected field `{field}`"))),
            }
        }
        let (Some(tree), Some(language)) = (tree, language) else {
            return Err(Error::parse(line_no, "both tree= and L= are required"));
        };
        moves.push(TreeMove { tree, language });
    }
    Ok(TreeScripted { moves })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeGameReport {
    pub adversary: String,
    pub rounds_played: usize,
    pub outcome: Outcome,
    pub records: Vec<TreeRoundRecord>,
    pub prefix_coherence: bool,
    pub annotation_levels: bool,
    pub certificate: Option<RegularTree>,
    pub certificate_in_languages: Vec<bool>,
    pub verified: bool,
}

pub fn play_tree_scripted(
    adversary: &mut dyn TreeAdversary,
    alphabet: &Alphabet,
    rounds: usize,
) -> Result<TreeGameReport> {
    play_tree(TreeGameState::new(alphabet), adversary, rounds)
}

pub fn play_tree(mut state: TreeGameState, adversary: &mut dyn TreeAdversary, rounds: usize) -> Result<TreeGameReport> {
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
    let certificate = state.response().and_then(bta_witness);
    let certificate_in_languages = match &certificate {
        Some(c) => state
            .languages()
            .map(|l| bta_member(l, c).map(|r| r.is_some()))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let verified = outcome == Outcome::Completed
        && state.records().iter().all(|r| r.tree_in_response && r.tree_in_previous != Some(false))
        && state.prefix_coherence()
        && state.annotation_levels()
        && certificate.is_some()
        && certificate_in_languages.iter().all(|&b| b);
    Ok(TreeGameReport {
        adversary: adversary.name(),
        rounds_played: state.round(),
        outcome,
        records: state.records().to_vec(),
        prefix_coherence: state.prefix_coherence(),
        annotation_levels: state.annotation_levels(),
        certificate,
        certificate_in_languages,
        verified,
    })
}

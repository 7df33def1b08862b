//! Nondeterministic Büchi automata over finite alphabets and the ω-regular
//! closure algebra: boolean operations, products, projections, decision
//! procedures and the decomposition into `U·V^ω` pieces.

mod complement;
mod decide;
mod decompose;
mod determinize;
pub(crate) mod format;
mod membership;
mod ops;
mod reduce;

use std::ops::{Deref, DerefMut};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph;
use crate::words::Alphabet;

pub use complement::{complement, complement_rank_based, complement_with};
pub use decide::{
    contains, contains_with, equivalent, equivalent_with, is_cantor_closed,
    is_cantor_closed_with, safety_closure,
};
pub use decompose::{buchi_decomposition, nfa_member, nfa_sample, DecompositionPair};
pub use format::{parse_automaton, parse_nba, parse_nfa, serialize, ParsedAutomaton};
pub use membership::{find_lasso, find_up_word, is_empty, member, LassoWitness};
pub use ops::{
    clopen_nba, intersection, intersection_all, pinf_nba, product, projection, singleton_nba,
    union, universal_nba,
};
pub use reduce::reduce;

/// Caps the number of states an expensive construction may create.
#[derive(Clone, Debug)]
pub struct Budget {
    max_states: usize,
    cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub const DEFAULT_MAX_STATES: usize = 1_000_000;

    pub fn new(max_states: usize) -> Self {
        Budget {
            max_states,
            cancel: None,
        }
    }

    /// Attaches a flag that aborts the construction once set.
    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub(crate) fn check(&self, states: usize) -> Result<()> {
        if self.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Err(Error::Cancelled);
        }
        if states > self.max_states {
            return Err(Error::BudgetExceeded(self.max_states));
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_MAX_STATES)
    }
}

/// States, initial and accepting sets, and a transition relation
/// `Q × Σ × Q`. Shared by [`Nba`] and [`Nfa`], which differ only in how runs
/// are accepted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TransitionSystem {
    alphabet: Alphabet,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    /// `succ[state][letter]`, sorted and deduplicated.
    succ: Vec<Vec<Vec<usize>>>,
}

impl TransitionSystem {
    fn new(alphabet: &Alphabet, states: usize) -> Result<Self> {
        if states == 0 {
            return Err(Error::InvalidArgument(
                "an automaton needs at least one state".into(),
            ));
        }
        Ok(TransitionSystem {
            alphabet: alphabet.clone(),
            initial: Vec::new(),
            accepting: vec![false; states],
            succ: vec![vec![Vec::new(); alphabet.len()]; states],
        })
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q < self.states() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state: q,
                states: self.states(),
            })
        }
    }

    pub fn add_transition(&mut self, from: usize, letter: usize, to: usize) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        self.alphabet.check_letter(letter)?;
        let list = &mut self.succ[from][letter];
        if let Err(pos) = list.binary_search(&to) {
            list.insert(pos, to);
        }
        Ok(())
    }

    pub fn add_initial(&mut self, q: usize) -> Result<()> {
        self.check_state(q)?;
        if let Err(pos) = self.initial.binary_search(&q) {
            self.initial.insert(pos, q);
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, q: usize, accepting: bool) -> Result<()> {
        self.check_state(q)?;
        self.accepting[q] = accepting;
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initial.binary_search(&q).is_ok()
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states()).filter(|&q| self.accepting[q])
    }

    pub fn all_accepting(&self) -> bool {
        self.accepting.iter().all(|&a| a)
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.succ[q][letter]
    }

    /// All transitions `(from, letter, to)` in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, qs)| qs.iter().map(move |&q| (p, a, q)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.succ.iter().flatten().map(Vec::len).sum()
    }

    /// At most one initial state and at most one successor per state and letter.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1 && self.succ.iter().flatten().all(|qs| qs.len() <= 1)
    }

    /// Letter-blind successor lists.
    pub(crate) fn graph(&self) -> Vec<Vec<usize>> {
        self.succ
            .iter()
            .map(|row| {
                let mut all: Vec<usize> = row.iter().flatten().copied().collect();
                all.sort_unstable();
                all.dedup();
                all
            })
            .collect()
    }

    /// Keeps the states with `keep[q]`, renumbered in increasing order.
    /// Falls back to a single dead state when nothing is kept.
    pub(crate) fn restrict(&self, keep: &[bool]) -> TransitionSystem {
        let mut index = vec![usize::MAX; self.states()];
        let mut count = 0;
        for q in 0..self.states() {
            if keep[q] {
                index[q] = count;
                count += 1;
            }
        }
        if count == 0 {
            let mut dead = TransitionSystem::new(&self.alphabet, 1).expect("one state");
            dead.initial.push(0);
            return dead;
        }
        let mut out = TransitionSystem::new(&self.alphabet, count).expect("nonzero states");
        out.initial = self
            .initial
            .iter()
            .filter(|&&q| keep[q])
            .map(|&q| index[q])
            .collect();
        for q in 0..self.states() {
            if !keep[q] {
                continue;
            }
            out.accepting[index[q]] = self.accepting[q];
            for a in 0..self.alphabet.len() {
                out.succ[index[q]][a] = self.succ[q][a]
                    .iter()
                    .filter(|&&r| keep[r])
                    .map(|&r| index[r])
                    .collect();
            }
        }
        out
    }

    fn reachable(&self) -> Vec<bool> {
        graph::reachable(&self.graph(), self.initial.iter().copied())
    }
}

/// A nondeterministic Büchi automaton: a run is accepting when it visits
/// accepting states infinitely often.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Nba(TransitionSystem);

/// A finite-word automaton over the same kind of transition system.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Nfa(TransitionSystem);

impl Nba {
    /// `states` states, no initial or accepting states and no transitions yet.
    pub fn new(alphabet: &Alphabet, states: usize) -> Result<Self> {
        TransitionSystem::new(alphabet, states).map(Nba)
    }

    /// One-state automaton with the empty language.
    pub fn empty(alphabet: &Alphabet) -> Self {
        let mut ts = TransitionSystem::new(alphabet, 1).expect("one state");
        ts.initial.push(0);
        Nba(ts)
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.0
    }

    /// Drops states that are unreachable or cannot reach an accepting cycle.
    /// The language is unchanged.
    pub fn trim(&self) -> Nba {
        let g = self.graph();
        let reach = self.reachable();
        let comp = graph::scc(g.len(), &g);
        let cyc = graph::on_cycle(&g, &comp);
        let good: Vec<bool> = (0..self.states())
            .map(|q| reach[q] && cyc[q] && self.is_accepting(q))
            .collect();
        let live = graph::coreachable(&g, &good);
        let keep: Vec<bool> = (0..self.states()).map(|q| reach[q] && live[q]).collect();
        Nba(self.restrict(&keep))
    }

    pub fn into_nfa(self) -> Nfa {
        Nfa(self.0)
    }
}

impl Nfa {
    pub fn new(alphabet: &Alphabet, states: usize) -> Result<Self> {
        TransitionSystem::new(alphabet, states).map(Nfa)
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.0
    }

    /// Drops states that are unreachable or cannot reach an accepting state.
    pub fn trim(&self) -> Nfa {
        let g = self.graph();
        let reach = self.reachable();
        let live = graph::coreachable(&g, &self.accepting);
        let keep: Vec<bool> = (0..self.states()).map(|q| reach[q] && live[q]).collect();
        Nfa(self.restrict(&keep))
    }

    pub fn into_nba(self) -> Nba {
        Nba(self.0)
    }
}

impl Deref for Nba {
    type Target = TransitionSystem;
    fn deref(&self) -> &TransitionSystem {
        &self.0
    }
}

impl DerefMut for Nba {
    fn deref_mut(&mut self) -> &mut TransitionSystem {
        &mut self.0
    }
}

impl Deref for Nfa {
    type Target = TransitionSystem;
    fn deref(&self) -> &TransitionSystem {
        &self.0
    }
}

impl DerefMut for Nfa {
    fn deref_mut(&mut self) -> &mut TransitionSystem {
        &mut self.0
    }
}
